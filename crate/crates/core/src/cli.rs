//! Command-line front end. Reports are JSON on stdout with a short human
//! summary on stderr; exit codes are 0 (all verdicts pass), 1 (a verdict
//! failed) and 2 (bad input).

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::exactfield::{AlgebraElement, Rational, Ring};
use crate::json::{self as codec, ParseError};
use crate::pst::generator::{admissible_shapes, schur_instance, tensor_instance, GeneratorConfig};
use crate::pst::{self, is_crystalline, is_semistable, PipelineOutcome, PstError, Verdict};
use crate::schur::SchurSpace;
use crate::sen::{self, ClassData, Flavor, SenError, WeightSystem};
use crate::tableaux::{r_of, Partition};

#[derive(Parser, Debug)]
#[command(
    name = "schur-twist",
    version,
    about = "Exact invariants of Schur functors, Sen weights and (phi, N, Gal)-modules"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Include wall-clock timing in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    /// Rational prime parameter p.
    #[arg(long, global = true)]
    prime: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Matrix of Schur^u(A) (or of the induced derivation) in the tableau basis.
    SchurMatrix {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        derivation: bool,
    },
    /// Operations on classification data.
    Class {
        #[command(subcommand)]
        op: ClassOp,
    },
    /// Solve for a twisting character at the level of weights.
    TwistSolve {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        shape: Option<String>,
        files: Vec<PathBuf>,
    },
    /// Character weights with their p-integral decomposition.
    Charwts { file: PathBuf },
    /// Operations on (phi, N, Gal)-modules.
    Pst {
        #[command(subcommand)]
        op: PstOp,
    },
    /// Run a seeded verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        shape: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        count: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum ClassOp {
    Tensor {
        a: PathBuf,
        b: PathBuf,
    },
    Schur {
        #[arg(long)]
        shape: String,
        a: PathBuf,
    },
    Check {
        a: PathBuf,
    },
    Twist {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        a: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum PstOp {
    Validate {
        file: PathBuf,
    },
    Check {
        file: PathBuf,
    },
    TwistSolve {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        shape: Option<String>,
        /// JSON list of E-scalars: a monic factor of x^f - eta(omega^f).
        #[arg(long)]
        factor: Option<PathBuf>,
        files: Vec<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Tensor,
    Schur,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    HtTensor,
    HtSchur,
    SstTensor,
    SstSchur,
    Counterexample,
}

#[derive(Debug, Error)]
enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{file}: invalid JSON: {source}")]
    Json { file: String, source: serde_json::Error },
    #[error("{file}: {source}")]
    Parse { file: String, source: ParseError },
    #[error("{0}")]
    Usage(String),
}

/// Result of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
    pub summary: String,
}

#[derive(Default)]
struct Report {
    verdicts: Vec<Verdict>,
    outputs: Map<String, Value>,
}

impl Report {
    fn verdict(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    fn output(&mut self, key: &str, v: Value) {
        self.outputs.insert(key.into(), v);
    }

    /// A library error surfaced as a failed verdict named after its variant.
    fn error(&mut self, e: &dyn std::fmt::Debug, message: String) {
        let debug = format!("{e:?}");
        let name: String = debug.chars().take_while(|c| c.is_alphanumeric()).collect();
        self.verdicts.push(Verdict::new(name, false, Some(message)));
    }
}

fn read_json(path: &Path) -> Result<Value, InputError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
    serde_json::from_str(&text).map_err(|source| InputError::Json { file: path.display().to_string(), source })
}

fn parse_with<T>(path: &Path, f: impl FnOnce(&Value) -> Result<T, ParseError>) -> Result<T, InputError> {
    let v = read_json(path)?;
    f(&v).map_err(|source| InputError::Parse { file: path.display().to_string(), source })
}

fn parse_shape(s: &str) -> Result<Partition, InputError> {
    s.parse().map_err(|e| InputError::Usage(format!("--shape {s}: {e}")))
}

fn parse_prime(s: Option<&str>) -> Result<Rational, InputError> {
    let q: Rational = s.unwrap_or("2").parse().map_err(|e| InputError::Usage(format!("--prime: {e}")))?;
    if !q.is_integer() || q <= Rational::one() {
        return Err(InputError::Usage("--prime must be an integer at least 2".into()));
    }
    Ok(q)
}

fn exactly<const N: usize>(files: &[PathBuf], what: &str) -> Result<[PathBuf; N], InputError> {
    files.to_vec().try_into().map_err(|_| InputError::Usage(format!("{what} expects {N} input file(s)")))
}

/// Parses arguments and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome { code, report: Value::Null, summary: e.render().to_string() };
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let start = Instant::now();
    let mut report = Report::default();
    let result = dispatch(&cli, &mut report);
    let mut out = Map::new();
    out.insert("command".into(), json!(echo));
    match result {
        Err(e) => {
            out.insert("error".into(), json!({"kind": "input", "message": e.to_string()}));
            Outcome { code: 2, report: Value::Object(out), summary: format!("input error: {e}") }
        }
        Ok(()) => {
            let passed = report.verdicts.iter().all(|v| v.passed);
            out.insert("verdicts".into(), Value::Array(report.verdicts.iter().map(codec::verdict_to_json).collect()));
            out.insert("outputs".into(), Value::Object(report.outputs));
            if cli.timing {
                out.insert("timing_ms".into(), json!(start.elapsed().as_millis() as u64));
            }
            let mut summary: Vec<String> = report.verdicts.iter().map(ToString::to_string).collect();
            summary.push(if passed { "ok".into() } else { "FAILED".into() });
            Outcome { code: if passed { 0 } else { 1 }, report: Value::Object(out), summary: summary.join("\n") }
        }
    }
}

fn dispatch(cli: &Cli, r: &mut Report) -> Result<(), InputError> {
    match &cli.command {
        Command::SchurMatrix { shape, matrix, derivation } => {
            let u = parse_shape(shape)?;
            let a = parse_with(matrix, |v| codec::element_matrix_from_json(v, None, "$"))?;
            let space = SchurSpace::new(&u, a.rows());
            let m = if *derivation { space.derivation_matrix(&a) } else { space.induced_matrix(&a) };
            match m {
                Ok(m) => {
                    r.output("shape", codec::partition_to_json(&u));
                    r.output("basis", Value::Array(space.basis().iter().map(codec::tableau_to_json).collect()));
                    r.output("matrix", codec::matrix_to_json(&m));
                }
                Err(e) => r.error(&e, e.to_string()),
            }
        }
        Command::Class { op } => class_command(op, r)?,
        Command::TwistSolve { mode, shape, files } => twist_solve(*mode, shape.as_deref(), files, r)?,
        Command::Charwts { file } => {
            let targets = parse_with(file, codec::character_weights_from_json)?;
            let p = parse_prime(cli.prime.as_deref())?;
            match sen::charwts_construct(&targets, p.numer()) {
                Ok(rep) => {
                    r.output("weights", codec::character_weights_to_json(&rep.weights));
                    r.output("prime", json!(rep.prime.to_string()));
                    r.output("exponents", json!(rep.exponents));
                    r.output(
                        "integral_parts",
                        json!(rep.integral_parts.iter().map(codec::element_to_json).collect::<Vec<_>>()),
                    );
                }
                Err(e) => r.error(&e, e.to_string()),
            }
        }
        Command::Pst { op } => pst_command(op, cli.prime.as_deref(), r)?,
        Command::Verify { suite, seed, shape, rank, count } => {
            let u = shape.as_deref().map(parse_shape).transpose()?;
            let prime = parse_prime(cli.prime.as_deref())?;
            verify(*suite, *seed, u, *rank, *count, &prime, r)?;
        }
    }
    Ok(())
}

fn class_command(op: &ClassOp, r: &mut Report) -> Result<(), InputError> {
    let result = match op {
        ClassOp::Tensor { a, b } => {
            let a = parse_with(a, codec::class_from_json)?;
            let b = parse_with(b, codec::class_from_json)?;
            sen::class_tensor(&a, &b)
        }
        ClassOp::Schur { shape, a } => {
            let u = parse_shape(shape)?;
            let a = parse_with(a, codec::class_from_json)?;
            sen::class_schur(&a, &u)
        }
        ClassOp::Twist { weight, a } => {
            let w = codec::element_from_json(&Value::String(weight.clone()), None, "--weight")
                .map_err(|source| InputError::Parse { file: "--weight".into(), source })?;
            let a = parse_with(a, codec::class_from_json)?;
            sen::twist_class(&a, &w)
        }
        ClassOp::Check { a } => {
            let a = parse_with(a, codec::class_from_json)?;
            let (ht, dr) = match a.flavor() {
                Flavor::HodgeTate => (Value::Bool(sen::is_hodge_tate(&a).expect("flavor matches")), Value::Null),
                Flavor::DeRham => (Value::Null, Value::Bool(sen::is_de_rham(&a).expect("flavor matches"))),
            };
            r.output("hodge_tate", ht);
            r.output("de_rham", dr);
            r.output("rank", json!(a.rank()));
            r.output("weights", Value::Array(a.weights().iter().map(codec::element_to_json).collect()));
            return Ok(());
        }
    };
    match result {
        Ok(c) => r.output("result", codec::class_to_json(&c)),
        Err(e) => r.error(&e, e.to_string()),
    }
    Ok(())
}

fn solver_result(r: &mut Report, res: Result<sen::CharacterWeights, SenError>) {
    match res {
        Ok(mu) => {
            r.verdict(Verdict::check("twisting character exists", true));
            r.output("mu", codec::character_weights_to_json(&mu));
        }
        Err(SenError::NoSolution(w)) => {
            r.verdict(Verdict::new("NoSolution", false, Some(w.to_string())));
            r.output("witness", codec::witness_to_json(&w));
        }
        Err(e) => r.error(&e, e.to_string()),
    }
}

fn twist_solve(mode: Mode, shape: Option<&str>, files: &[PathBuf], r: &mut Report) -> Result<(), InputError> {
    match mode {
        Mode::Tensor => {
            let [a, b] = exactly::<2>(files, "twist-solve --mode tensor")?;
            let w = parse_with(&a, codec::weight_system_from_json)?;
            let w2 = parse_with(&b, codec::weight_system_from_json)?;
            solver_result(r, sen::tensor_twist_solve(&w, &w2));
        }
        Mode::Schur => {
            let u = parse_shape(shape.ok_or_else(|| InputError::Usage("--mode schur needs --shape".into()))?)?;
            let [a] = exactly::<1>(files, "twist-solve --mode schur")?;
            let w = parse_with(&a, codec::weight_system_from_json)?;
            solver_result(r, sen::schur_twist_solve(&w, &u));
        }
    }
    Ok(())
}

fn check_prime(d: &pst::PhiNGalModule<AlgebraElement>, prime: Option<&str>) -> Result<(), InputError> {
    if let Some(p) = prime {
        if parse_prime(Some(p))? != *d.prime() {
            return Err(InputError::Usage(format!("--prime {p} disagrees with the module's p = {}", d.prime())));
        }
    }
    Ok(())
}

fn pipeline_report(r: &mut Report, res: Result<PipelineOutcome<AlgebraElement>, PstError>) {
    match res {
        Ok(out) => {
            r.output("eta", codec::character_to_json(&out.eta));
            r.output(
                "F",
                json!({"modulus": out.extension.field.modulus().iter().map(codec::element_to_json).collect::<Vec<_>>()}),
            );
            r.output("mu", codec::character_to_json(&out.extension.mu));
            r.output("crystalline_context", json!(out.crystalline_context));
            r.output("twisted", Value::Array(out.twisted.iter().map(codec::extended_module_to_json).collect()));
            for v in out.verdicts {
                r.verdict(v);
            }
        }
        Err(e) => r.error(&e, e.to_string()),
    }
}

fn pst_command(op: &PstOp, prime: Option<&str>, r: &mut Report) -> Result<(), InputError> {
    match op {
        PstOp::Validate { file } => {
            let d = parse_with(file, codec::module_from_json)?;
            check_prime(&d, prime)?;
            let rep = d.validate();
            r.output("valid", json!(rep.is_valid()));
            r.output(
                "failures",
                Value::Array(
                    rep.failures.iter().map(|f| json!({"relation": f.relation, "witness": f.witness})).collect(),
                ),
            );
            for f in rep.failures {
                r.verdict(Verdict::new(f.relation, false, Some(f.witness)));
            }
            if r.verdicts.is_empty() {
                r.verdict(Verdict::check("module relations hold", true));
            }
        }
        PstOp::Check { file } => {
            let d = parse_with(file, codec::module_from_json)?;
            check_prime(&d, prime)?;
            match (is_semistable(&d), is_crystalline(&d)) {
                (Ok(s), Ok(c)) => {
                    r.output("semistable", json!(s));
                    r.output("crystalline", json!(c));
                }
                (Err(e), _) | (_, Err(e)) => r.error(&e, e.to_string()),
            }
        }
        PstOp::TwistSolve { mode, shape, factor, files } => {
            let modules: Vec<pst::PhiNGalModule<AlgebraElement>> =
                files.iter().map(|f| parse_with(f, codec::module_from_json)).collect::<Result<_, _>>()?;
            for d in &modules {
                check_prime(d, prime)?;
            }
            let factor = match factor {
                None => None,
                Some(path) => {
                    let alg = modules.first().map(|d| d.parent().base.clone());
                    Some(parse_with(path, |v| {
                        let items = v
                            .as_array()
                            .ok_or_else(|| ParseError { path: "$".into(), msg: "expected an array".into() })?;
                        items
                            .iter()
                            .enumerate()
                            .map(|(i, x)| codec::element_from_json(x, alg.as_ref(), &format!("$[{i}]")))
                            .collect::<Result<Vec<_>, _>>()
                    })?)
                }
            };
            match mode {
                Mode::Tensor => {
                    let [a, b]: [pst::PhiNGalModule<AlgebraElement>; 2] = modules
                        .try_into()
                        .map_err(|_| InputError::Usage("pst twist-solve --mode tensor expects 2 modules".into()))?;
                    pipeline_report(r, pst::pipeline_sst_tensor(&a, &b, factor));
                }
                Mode::Schur => {
                    let u = parse_shape(
                        shape.as_deref().ok_or_else(|| InputError::Usage("--mode schur needs --shape".into()))?,
                    )?;
                    let [a]: [pst::PhiNGalModule<AlgebraElement>; 1] = modules
                        .try_into()
                        .map_err(|_| InputError::Usage("pst twist-solve --mode schur expects 1 module".into()))?;
                    pipeline_report(r, pst::pipeline_sst_schur(&a, &u, factor));
                }
            }
        }
    }
    Ok(())
}

/// Tracks one named property over many instances, remembering the first
/// failing instance.
struct Tally {
    name: &'static str,
    failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, failure: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    fn verdict(self) -> Verdict {
        Verdict::new(self.name, self.failure.is_none(), self.failure)
    }
}

fn random_rational(rng: &mut ChaCha8Rng, denominators: &[i64]) -> Rational {
    let d = *denominators.choose(rng).expect("nonempty");
    Rational::new(rng.gen_range(-3 * d..=3 * d), d).expect("nonzero denominator")
}

fn q(x: &Rational) -> AlgebraElement {
    AlgebraElement::rational(x.clone())
}

fn planted_weights(rng: &mut ChaCha8Rng, labels: usize, rank: usize, mu: &[Rational], sign: i64) -> WeightSystem {
    let weights = (0..labels)
        .map(|h| {
            (0..rank)
                .map(|_| {
                    q(&Rational::from_integer(rng.gen_range(-3..=3)))
                        .add(&q(&mu[h]).scale(&Rational::from_integer(sign)))
                })
                .collect()
        })
        .collect();
    WeightSystem::new((1..=labels).map(|h| format!("h{h}")).collect(), weights).expect("equal cardinalities")
}

fn all_integral_diff(found: &sen::CharacterWeights, planted: &[Rational]) -> bool {
    found.weights.iter().zip(planted).all(|(a, b)| a.sub(&q(b)).is_integer())
}

fn class_of(w: &WeightSystem, h: usize, flavor: Flavor) -> ClassData {
    ClassData::semisimple(flavor, &w.weights()[h]).expect("rank at least one")
}

fn verify(
    suite: Suite,
    seed: u64,
    shape: Option<Partition>,
    rank: Option<usize>,
    count: Option<usize>,
    prime: &Rational,
    r: &mut Report,
) -> Result<(), InputError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    r.output("seed", json!(seed));
    match suite {
        Suite::HtTensor => verify_ht_tensor(&mut rng, count.unwrap_or(25), r),
        Suite::HtSchur => verify_ht_schur(&mut rng, shape, rank, count.unwrap_or(25), r)?,
        Suite::SstTensor => verify_sst_tensor(&mut rng, count.unwrap_or(5), prime, r),
        Suite::SstSchur => verify_sst_schur(&mut rng, shape, rank, count.unwrap_or(5), prime, r)?,
        Suite::Counterexample => verify_counterexample(r),
    }
    Ok(())
}

fn verify_ht_tensor(rng: &mut ChaCha8Rng, count: usize, r: &mut Report) {
    let mut product = Tally::new("W⊗W' Hodge-Tate and de Rham on planted data");
    let mut solved = Tally::new("solver finds mu with W(mu^-1), W'(mu) integral");
    let mut unique = Tally::new("recovered mu agrees with the planted one modulo Z");
    let mut classes = Tally::new("twisted classes are Hodge-Tate");
    let mut found = Vec::new();
    for k in 0..count {
        let labels = rng.gen_range(1..=2);
        let mu: Vec<Rational> = (0..labels).map(|_| random_rational(rng, &[1, 2, 3, 4, 5, 6])).collect();
        let (d1, d2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let w = planted_weights(rng, labels, d1, &mu, 1);
        let w2 = planted_weights(rng, labels, d2, &mu, -1);
        for h in 0..labels {
            let t = sen::class_tensor(&class_of(&w, h, Flavor::HodgeTate), &class_of(&w2, h, Flavor::HodgeTate));
            let td = sen::class_tensor(&class_of(&w, h, Flavor::DeRham), &class_of(&w2, h, Flavor::DeRham));
            let ok = t.as_ref().is_ok_and(|c| sen::is_hodge_tate(c) == Ok(true))
                && td.as_ref().is_ok_and(|c| sen::is_de_rham(c) == Ok(true));
            product.record(ok, || format!("instance {k}"));
        }
        match sen::tensor_twist_solve(&w, &w2) {
            Ok(m) => {
                let ok =
                    w.twist(&m, -1).is_ok_and(|x| x.is_integral()) && w2.twist(&m, 1).is_ok_and(|x| x.is_integral());
                solved.record(ok, || format!("instance {k}"));
                unique.record(all_integral_diff(&m, &mu), || format!("instance {k}"));
                for h in 0..labels {
                    let neg = m.weights[h].neg();
                    let a = sen::twist_class(&class_of(&w, h, Flavor::HodgeTate), &neg);
                    let b = sen::twist_class(&class_of(&w2, h, Flavor::HodgeTate), &m.weights[h]);
                    let ok = a.is_ok_and(|c| sen::is_hodge_tate(&c) == Ok(true))
                        && b.is_ok_and(|c| sen::is_hodge_tate(&c) == Ok(true));
                    classes.record(ok, || format!("instance {k}"));
                }
                found.push(codec::character_weights_to_json(&m));
            }
            Err(e) => solved.record(false, || format!("instance {k}: {e}")),
        }
    }
    for t in [product, solved, unique, classes] {
        r.verdict(t.verdict());
    }
    r.output("instances", json!(count));
    r.output("mu", Value::Array(found));
}

fn divisors_upto_six(n: usize) -> Vec<i64> {
    (1..=6).filter(|d| n.is_multiple_of(*d)).map(|d| d as i64).collect()
}

fn pick_shape(rng: &mut ChaCha8Rng, max_rank: usize) -> Partition {
    admissible_shapes(4, max_rank).choose(rng).expect("admissible shapes exist").clone()
}

fn verify_ht_schur(
    rng: &mut ChaCha8Rng,
    shape: Option<Partition>,
    rank: Option<usize>,
    count: usize,
    r: &mut Report,
) -> Result<(), InputError> {
    let u = shape.unwrap_or_else(|| pick_shape(rng, 4));
    let needed = r_of(&u);
    r.output("shape", codec::partition_to_json(&u));
    r.output("r", json!(needed));
    if let Some(d) = rank.filter(|&d| d < needed) {
        let w = planted_weights(rng, 1, d, &[Rational::zero()], 1);
        let res = sen::schur_twist_solve(&w, &u);
        let ok = matches!(res, Err(SenError::RankTooSmall { .. }));
        r.verdict(Verdict::new("rank below r(u) is rejected with RankTooSmall", ok, (!ok).then(|| format!("{res:?}"))));
        r.output("rank", json!(d));
        return Ok(());
    }
    if rank == Some(0) {
        return Err(InputError::Usage("--rank must be positive".into()));
    }
    let mut schur_ht = Tally::new("Schur^u(W) Hodge-Tate on planted data");
    let mut solved = Tally::new("solver finds mu with W(mu^-1) integral");
    let mut unique = Tally::new("recovered mu agrees with the planted one modulo Z");
    let mut classes = Tally::new("twisted class is Hodge-Tate");
    let dens = divisors_upto_six(u.size());
    let mut found = Vec::new();
    for k in 0..count {
        let d = rank.unwrap_or_else(|| rng.gen_range(needed..=needed + 1));
        let labels = rng.gen_range(1..=2);
        let mu: Vec<Rational> = (0..labels).map(|_| random_rational(rng, &dens)).collect();
        let w = planted_weights(rng, labels, d, &mu, 1);
        for h in 0..labels {
            let s = sen::class_schur(&class_of(&w, h, Flavor::HodgeTate), &u);
            schur_ht.record(s.is_ok_and(|c| sen::is_hodge_tate(&c) == Ok(true)), || format!("instance {k}"));
        }
        match sen::schur_twist_solve(&w, &u) {
            Ok(m) => {
                solved.record(w.twist(&m, -1).is_ok_and(|x| x.is_integral()), || format!("instance {k}"));
                unique.record(all_integral_diff(&m, &mu), || format!("instance {k}"));
                for h in 0..labels {
                    let a = sen::twist_class(&class_of(&w, h, Flavor::HodgeTate), &m.weights[h].neg());
                    classes.record(a.is_ok_and(|c| sen::is_hodge_tate(&c) == Ok(true)), || format!("instance {k}"));
                }
                found.push(codec::character_weights_to_json(&m));
            }
            Err(e) => solved.record(false, || format!("instance {k}: {e}")),
        }
    }
    for t in [schur_ht, solved, unique, classes] {
        r.verdict(t.verdict());
    }
    r.output("instances", json!(count));
    r.output("mu", Value::Array(found));
    Ok(())
}

fn pipeline_tallies(names: [&'static str; 3]) -> [Tally; 3] {
    names.map(Tally::new)
}

fn verify_sst_tensor(rng: &mut ChaCha8Rng, count: usize, prime: &Rational, r: &mut Report) {
    let cfg = GeneratorConfig { prime: prime.clone(), ..GeneratorConfig::default() };
    let [mut pipe, mut planted, mut crys] = pipeline_tallies([
        "D(mu^-1) and D'(mu) semistable",
        "mu restricted to inertia is the planted eta",
        "crystalline tensor product gives crystalline twists",
    ]);
    let mut families = Vec::new();
    for k in 0..count {
        let inst = tensor_instance(rng, &cfg);
        families.push(json!(format!("{:?}", inst.family)));
        match pst::pipeline_sst_tensor(&inst.d, &inst.d2, None) {
            Ok(out) => {
                let semistable = out.verdicts.iter().filter(|v| v.name.ends_with("semistable")).all(|v| v.passed);
                pipe.record(out.passed() && semistable, || format!("instance {k}: {:?}", out.verdicts));
                planted.record(out.eta == inst.eta, || format!("instance {k}"));
                crys.record(
                    out.crystalline_context == inst.crystalline
                        && out.verdicts.iter().filter(|v| v.name.ends_with("crystalline")).all(|v| v.passed),
                    || format!("instance {k}"),
                );
            }
            Err(e) => pipe.record(false, || format!("instance {k}: {e}")),
        }
    }
    for t in [pipe, planted, crys] {
        r.verdict(t.verdict());
    }
    r.output("instances", json!(count));
    r.output("families", Value::Array(families));
}

fn verify_sst_schur(
    rng: &mut ChaCha8Rng,
    shape: Option<Partition>,
    rank: Option<usize>,
    count: usize,
    prime: &Rational,
    r: &mut Report,
) -> Result<(), InputError> {
    let max_rank = rank.unwrap_or(3).max(3);
    if rank == Some(0) {
        return Err(InputError::Usage("--rank must be positive".into()));
    }
    let cfg = GeneratorConfig { prime: prime.clone(), max_rank, ..GeneratorConfig::default() };
    let u = shape.unwrap_or_else(|| pick_shape(rng, max_rank));
    let needed = r_of(&u);
    r.output("shape", codec::partition_to_json(&u));
    r.output("r", json!(needed));
    if let Some(d) = rank.filter(|&d| d < needed) {
        let inst = schur_instance(rng, &cfg, &u, d);
        let res = pst::pipeline_sst_schur(&inst.d, &u, None);
        let ok = matches!(res, Err(PstError::RankTooSmall { .. }));
        r.verdict(Verdict::new(
            "rank below r(u) is rejected with RankTooSmall",
            ok,
            (!ok).then(|| format!("{:?}", res.err())),
        ));
        r.output("rank", json!(d));
        return Ok(());
    }
    let [mut pipe, mut planted, mut crys] = pipeline_tallies([
        "D(mu^-1) semistable",
        "mu restricted to inertia is the planted eta",
        "crystalline Schur module gives a crystalline twist",
    ]);
    let mut families = Vec::new();
    for k in 0..count {
        let d = rank.unwrap_or_else(|| rng.gen_range(needed..=max_rank.max(needed)));
        let inst = schur_instance(rng, &cfg, &u, d);
        families.push(json!(format!("{:?}", inst.family)));
        match pst::pipeline_sst_schur(&inst.d, &u, None) {
            Ok(out) => {
                pipe.record(out.passed(), || format!("instance {k}: {:?}", out.verdicts));
                planted.record(out.eta == inst.eta, || format!("instance {k}"));
                crys.record(out.crystalline_context == inst.crystalline, || format!("instance {k}"));
            }
            Err(e) => pipe.record(false, || format!("instance {k}: {e}")),
        }
    }
    for t in [pipe, planted, crys] {
        r.verdict(t.verdict());
    }
    r.output("instances", json!(count));
    r.output("families", Value::Array(families));
    Ok(())
}

fn verify_counterexample(r: &mut Report) {
    let zero = AlgebraElement::integer(0);
    let v = ClassData::new(Flavor::HodgeTate, vec![sen::Block::new(zero.clone(), 1)]).expect("one block");
    let wedge = Partition::column(2);
    let schur = sen::class_schur(&v, &wedge);
    let trivial = ClassData::semisimple(Flavor::HodgeTate, std::slice::from_ref(&zero)).expect("one block");
    r.verdict(Verdict::check("Λ²V is the trivial class", schur.as_ref().ok() == Some(&trivial)));
    r.verdict(Verdict::check("Λ²V is Hodge-Tate", schur.as_ref().is_ok_and(|c| sen::is_hodge_tate(c) == Ok(true))));
    r.verdict(Verdict::check("V is not Hodge-Tate", sen::is_hodge_tate(&v) == Ok(false)));
    let none = (-6..=6).all(|k| {
        let t = sen::twist_class(&v, &AlgebraElement::integer(k)).expect("rational twist");
        sen::is_hodge_tate(&t) == Ok(false) && t.blocks().iter().any(|b| b.depth == 1)
    });
    r.verdict(Verdict::check("no twist of V is Hodge-Tate (the Jordan block survives every twist)", none));
    let w = WeightSystem::single(vec![zero.clone(), zero]);
    let res = sen::schur_twist_solve(&w, &wedge);
    r.verdict(Verdict::check(
        "rank 2 is below r((1,1)) = 3",
        matches!(res, Err(SenError::RankTooSmall { rank: 2, needed: 3 })),
    ));
    r.output("class", codec::class_to_json(&v));
    if let Ok(s) = schur {
        r.output("wedge_square", codec::class_to_json(&s));
    }
}
