use std::io::Write;

fn main() {
    let out = schur_twist::cli::run(std::env::args_os());
    if !out.report.is_null() {
        let text = serde_json::to_string_pretty(&out.report).expect("reports serialize");
        let mut stdout = std::io::stdout().lock();
        let _ = writeln!(stdout, "{text}");
    }
    if !out.summary.is_empty() {
        eprintln!("{}", out.summary.trim_end());
    }
    std::process::exit(out.code);
}
