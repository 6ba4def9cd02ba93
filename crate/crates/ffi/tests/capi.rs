use std::ffi::{c_char, c_int, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use schur_twist_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    st_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = st_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

unsafe fn class(json: &str) -> *mut StClass {
    let mut out = ptr::null_mut();
    assert_eq!(st_class_from_json(cstr(json).as_ptr(), &mut out), StStatus::Ok);
    out
}

#[test]
fn wedge_square_of_a_jordan_block() {
    unsafe {
        let v = class(r#"{"flavor": "HT", "blocks": [{"weight": "0/1", "depth": 1}]}"#);
        let mut ht = true;
        assert_eq!(st_class_is_hodge_tate(v, &mut ht), StStatus::Ok);
        assert!(!ht);
        let mut rank = 0usize;
        assert_eq!(st_class_rank(v, &mut rank), StStatus::Ok);
        assert_eq!(rank, 2);

        let mut w = ptr::null_mut();
        assert_eq!(st_class_schur(v, cstr("1,1").as_ptr(), &mut w), StStatus::Ok);
        assert_eq!(st_class_is_hodge_tate(w, &mut ht), StStatus::Ok);
        assert!(ht);
        let mut s = ptr::null_mut();
        assert_eq!(st_class_to_json(w, &mut s), StStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(json["blocks"].as_array().unwrap().len(), 1);
        assert_eq!(json["blocks"][0]["depth"], 0);
        st_class_free(w);
        st_class_free(v);
    }
}

#[test]
fn tensor_of_classes_follows_clebsch_gordan() {
    unsafe {
        let a = class(r#"{"flavor": "dR", "blocks": [{"weight": "0", "depth": 1}]}"#);
        let b = class(r#"{"flavor": "dR", "blocks": [{"weight": "0", "depth": 2}]}"#);
        let mut t = ptr::null_mut();
        assert_eq!(st_class_tensor(a, b, &mut t), StStatus::Ok);
        let mut rank = 0usize;
        st_class_rank(t, &mut rank);
        assert_eq!(rank, 6);
        let mut dr = true;
        assert_eq!(st_class_is_de_rham(t, &mut dr), StStatus::Ok);
        assert!(!dr);
        let mut ht = false;
        assert_eq!(st_class_is_hodge_tate(t, &mut ht), StStatus::LibraryError);
        assert!(last_error().starts_with("FlavorMismatch"));
        for p in [a, b, t] {
            st_class_free(p);
        }
    }
}

#[test]
fn errors_are_reported_through_status_codes() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(st_class_from_json(ptr::null(), &mut out), StStatus::NullPointer);
        assert_eq!(st_class_from_json(cstr("{").as_ptr(), &mut out), StStatus::ParseError);
        assert_eq!(
            st_class_from_json(cstr(r#"{"flavor": "x", "blocks": []}"#).as_ptr(), &mut out),
            StStatus::ParseError
        );
        assert!(last_error().contains("flavor"));
        let bad = [0xffu8, 0];
        assert_eq!(st_class_from_json(bad.as_ptr() as *const c_char, &mut out), StStatus::InvalidUtf8);
        let mut rank = 0usize;
        assert_eq!(st_class_rank(ptr::null(), &mut rank), StStatus::NullPointer);
        let v = class(r#"{"flavor": "HT", "blocks": [{"weight": "1/2"}]}"#);
        assert_eq!(st_class_rank(v, ptr::null_mut()), StStatus::NullPointer);
        assert_eq!(st_class_rank(v, &mut rank), StStatus::Ok);
        assert!(st_last_error().is_null());
        st_class_free(v);
        st_class_free(ptr::null_mut());
        st_string_free(ptr::null_mut());
    }
}

#[test]
fn solvers_and_schur_matrix() {
    unsafe {
        let mut out = ptr::null_mut();
        let s = st_tensor_twist_solve(cstr(r#"["1/3", "4/3"]"#).as_ptr(), cstr(r#"["-1/3"]"#).as_ptr(), &mut out);
        assert_eq!(s, StStatus::Ok);
        let mu: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(mu["weights"].as_array().unwrap().len(), 1);

        let s = st_schur_twist_solve(cstr(r#"["0", "0"]"#).as_ptr(), cstr("1,1").as_ptr(), &mut out);
        assert_eq!(s, StStatus::LibraryError);
        assert!(last_error().starts_with("RankTooSmall"));

        let s = st_schur_matrix(cstr("1,1").as_ptr(), cstr("[[1, 0], [0, 1]]").as_ptr(), &mut out);
        assert_eq!(s, StStatus::Ok);
        let m: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(m["rows"], 1);
        assert_eq!(m["cols"], 1);
    }
}

const CYCLIC2: &str = r#"{
  "group": [[0, 1], [1, 0]], "inertia": [0, 1], "omega": 0, "f": 1, "p": "2",
  "phi": [[2, 0], [0, 1]], "N": [[0, 0], [1, 0]],
  "rho": {"0": [[1, 0], [0, 1]], "1": [[-1, 0], [0, -1]]}
}"#;

#[test]
fn module_handles() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(st_module_from_json(cstr(CYCLIC2).as_ptr(), &mut m), StStatus::Ok, "{}", last_error());
        let mut valid = false;
        let mut report = ptr::null_mut();
        assert_eq!(st_module_validate(m, &mut valid, &mut report), StStatus::Ok);
        assert!(valid, "{}", take(report));
        let mut b = true;
        assert_eq!(st_module_is_crystalline(m, &mut b), StStatus::Ok);
        assert!(!b);
        assert_eq!(st_module_is_semistable(m, &mut b), StStatus::Ok);
        assert!(!b);
        let mut out = ptr::null_mut();
        assert_eq!(st_module_to_json(m, &mut out), StStatus::Ok);
        let again = take(out);
        let mut m2 = ptr::null_mut();
        assert_eq!(st_module_from_json(cstr(&again).as_ptr(), &mut m2), StStatus::Ok);
        assert_eq!(st_module_twist_tensor(m, m2, &mut out), StStatus::Ok, "{}", last_error());
        let rep: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(rep["passed"], true, "{rep}");
        assert_eq!(rep["crystalline_context"], false);
        assert_eq!(st_module_twist_schur(m, cstr("1,1").as_ptr(), &mut out), StStatus::LibraryError);
        assert!(last_error().starts_with("RankTooSmall"));
        st_module_free(m2);
        st_module_free(m);
    }
}

#[test]
fn run_drives_the_command_line() {
    unsafe {
        let args = [cstr("verify"), cstr("counterexample")];
        let argv: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
        let mut report = ptr::null_mut();
        let mut code: c_int = -1;
        assert_eq!(st_run(argv.as_ptr(), argv.len() as c_int, &mut report, &mut code), StStatus::Ok);
        assert_eq!(code, 0);
        let r: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert!(r["verdicts"].as_array().unwrap().iter().all(|v| v["passed"] == true));

        let args = [cstr("schur-matrix"), cstr("--shape"), cstr("2,x"), cstr("--matrix"), cstr("/nonexistent")];
        let argv: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
        assert_eq!(st_run(argv.as_ptr(), argv.len() as c_int, &mut report, &mut code), StStatus::Ok);
        assert_eq!(code, 2);
        st_string_free(report);
    }
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/schur_twist.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["st_last_error", "st_string_free", "st_class_from_json", "st_module_validate", "st_run"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let probe = std::env::temp_dir().join(format!("schur_twist_probe_{}.c", std::process::id()));
    std::fs::write(
        &probe,
        "#include \"schur_twist.h\"\nint main(void) {\n  StClass *c = 0;\n  StStatus s = st_class_from_json(\"{}\", &c);\n  st_class_free(c);\n  return s == ST_STATUS_OK;\n}\n",
    )
    .unwrap();
    for (compiler, lang) in [("cc", "c"), ("c++", "c++")] {
        let status = Command::new(compiler)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang, "-I"])
            .arg(dir.join("include"))
            .arg(&probe)
            .status();
        match status {
            Ok(s) => assert!(s.success(), "{compiler} rejected the header"),
            Err(e) => eprintln!("{compiler} unavailable: {e}"),
        }
    }
    let _ = std::fs::remove_file(probe);
}
