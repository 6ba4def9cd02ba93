//! C interface to `schur_twist`.
//!
//! Values cross the boundary either as opaque handles (`StClass`, `StModule`)
//! or as JSON strings in the library's serialization format. Every function
//! returns an [`StStatus`]; on failure `st_last_error` describes the problem.
//! Strings returned through `char **` out-parameters are owned by the caller
//! and must be released with `st_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use schur_twist::exactfield::AlgebraElement;
use schur_twist::json as codec;
use schur_twist::pst::{self, PhiNGalModule};
use schur_twist::schur::SchurSpace;
use schur_twist::sen::{self, ClassData};
use schur_twist::tableaux::Partition;
use serde_json::Value;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    LibraryError = 4,
    Panic = 5,
}

/// Opaque classification data.
pub struct StClass(ClassData);

/// Opaque (phi, N, Gal)-module over E^f.
pub struct StModule(PhiNGalModule<AlgebraElement>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

struct Failure(StStatus, String);

impl Failure {
    fn parse(e: impl std::fmt::Display) -> Self {
        Failure(StStatus::ParseError, e.to_string())
    }

    fn library(e: impl std::fmt::Debug + std::fmt::Display) -> Self {
        let debug = format!("{e:?}");
        let name: String = debug.chars().take_while(|c| c.is_alphanumeric()).collect();
        Failure(StStatus::LibraryError, format!("{name}: {e}"))
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> StStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            StStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            StStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(StStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(StStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn read_json(p: *const c_char) -> Result<Value, Failure> {
    serde_json::from_str(read_str(p)?).map_err(Failure::parse)
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(StStatus::NullPointer, "null handle".into()))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(StStatus::NullPointer, "null out-parameter".into()));
    }
    out.write(v);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, v: &Value) -> Result<(), Failure> {
    let s = CString::new(v.to_string()).expect("JSON has no interior nul");
    write_out(out, s.into_raw())
}

fn parse_shape(s: &str) -> Result<Partition, Failure> {
    s.parse::<Partition>().map_err(Failure::parse)
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn st_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn st_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_class_from_json(json: *const c_char, out: *mut *mut StClass) -> StStatus {
    guard(|| {
        let v = read_json(json)?;
        let c = codec::class_from_json(&v).map_err(Failure::parse)?;
        write_out(out, Box::into_raw(Box::new(StClass(c))))
    })
}

/// # Safety
/// `c` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn st_class_free(c: *mut StClass) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_class_to_json(c: *const StClass, out: *mut *mut c_char) -> StStatus {
    guard(|| write_string(out, &codec::class_to_json(&deref(c)?.0)))
}

/// Rank of the class.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_class_rank(c: *const StClass, out: *mut usize) -> StStatus {
    guard(|| write_out(out, deref(c)?.0.rank()))
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_class_tensor(a: *const StClass, b: *const StClass, out: *mut *mut StClass) -> StStatus {
    guard(|| {
        let t = sen::class_tensor(&deref(a)?.0, &deref(b)?.0).map_err(Failure::library)?;
        write_out(out, Box::into_raw(Box::new(StClass(t))))
    })
}

/// `shape` is a comma-separated partition such as "2,1".
///
/// # Safety
/// `a` must be a live handle, `shape` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn st_class_schur(a: *const StClass, shape: *const c_char, out: *mut *mut StClass) -> StStatus {
    guard(|| {
        let u = parse_shape(read_str(shape)?)?;
        let s = sen::class_schur(&deref(a)?.0, &u).map_err(Failure::library)?;
        write_out(out, Box::into_raw(Box::new(StClass(s))))
    })
}

/// Hodge-Tate test for a class of Hodge-Tate flavor.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_class_is_hodge_tate(a: *const StClass, out: *mut bool) -> StStatus {
    guard(|| write_out(out, sen::is_hodge_tate(&deref(a)?.0).map_err(Failure::library)?))
}

/// de Rham test for a class of de Rham flavor.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_class_is_de_rham(a: *const StClass, out: *mut bool) -> StStatus {
    guard(|| write_out(out, sen::is_de_rham(&deref(a)?.0).map_err(Failure::library)?))
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_module_from_json(json: *const c_char, out: *mut *mut StModule) -> StStatus {
    guard(|| {
        let v = read_json(json)?;
        let d = codec::module_from_json(&v).map_err(Failure::parse)?;
        write_out(out, Box::into_raw(Box::new(StModule(d))))
    })
}

/// # Safety
/// `m` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn st_module_free(m: *mut StModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_module_to_json(m: *const StModule, out: *mut *mut c_char) -> StStatus {
    guard(|| write_string(out, &codec::module_to_json(&deref(m)?.0)))
}

/// Checks the module relations. `valid` receives the verdict; when `report`
/// is not NULL it receives a JSON array of failed relations.
///
/// # Safety
/// `m` must be a live handle; `valid` must be writable; `report` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn st_module_validate(
    m: *const StModule,
    valid: *mut bool,
    report: *mut *mut c_char,
) -> StStatus {
    guard(|| {
        let rep = deref(m)?.0.validate();
        write_out(valid, rep.is_valid())?;
        if !report.is_null() {
            let failures: Vec<Value> = rep
                .failures
                .iter()
                .map(|f| serde_json::json!({"relation": f.relation, "witness": f.witness}))
                .collect();
            write_string(report, &Value::Array(failures))?;
        }
        Ok(())
    })
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_module_is_semistable(m: *const StModule, out: *mut bool) -> StStatus {
    guard(|| write_out(out, pst::is_semistable(&deref(m)?.0).map_err(Failure::library)?))
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_module_is_crystalline(m: *const StModule, out: *mut bool) -> StStatus {
    guard(|| write_out(out, pst::is_crystalline(&deref(m)?.0).map_err(Failure::library)?))
}

fn outcome_json(out: pst::PipelineOutcome<AlgebraElement>) -> Value {
    serde_json::json!({
        "eta": codec::character_to_json(&out.eta),
        "mu": codec::character_to_json(&out.extension.mu),
        "crystalline_context": out.crystalline_context,
        "passed": out.passed(),
        "verdicts": out.verdicts.iter().map(codec::verdict_to_json).collect::<Vec<_>>(),
    })
}

/// Runs the tensor twist pipeline on two modules and writes a JSON report.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_module_twist_tensor(
    a: *const StModule,
    b: *const StModule,
    out: *mut *mut c_char,
) -> StStatus {
    guard(|| {
        let res = pst::pipeline_sst_tensor(&deref(a)?.0, &deref(b)?.0, None).map_err(Failure::library)?;
        write_string(out, &outcome_json(res))
    })
}

/// Runs the Schur twist pipeline and writes a JSON report.
///
/// # Safety
/// `m` must be a live handle, `shape` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn st_module_twist_schur(
    m: *const StModule,
    shape: *const c_char,
    out: *mut *mut c_char,
) -> StStatus {
    guard(|| {
        let u = parse_shape(read_str(shape)?)?;
        let res = pst::pipeline_sst_schur(&deref(m)?.0, &u, None).map_err(Failure::library)?;
        write_string(out, &outcome_json(res))
    })
}

/// Matrix of Schur^shape applied to a square matrix given as JSON.
///
/// # Safety
/// `shape` and `matrix` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_schur_matrix(
    shape: *const c_char,
    matrix: *const c_char,
    out: *mut *mut c_char,
) -> StStatus {
    guard(|| {
        let u = parse_shape(read_str(shape)?)?;
        let a = codec::element_matrix_from_json(&read_json(matrix)?, None, "$").map_err(Failure::parse)?;
        let m = SchurSpace::new(&u, a.rows()).induced_matrix(&a).map_err(Failure::library)?;
        write_string(out, &codec::matrix_to_json(&m))
    })
}

/// Tensor twist solver on two weight systems given as JSON.
///
/// # Safety
/// Arguments must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_tensor_twist_solve(
    w1: *const c_char,
    w2: *const c_char,
    out: *mut *mut c_char,
) -> StStatus {
    guard(|| {
        let a = codec::weight_system_from_json(&read_json(w1)?).map_err(Failure::parse)?;
        let b = codec::weight_system_from_json(&read_json(w2)?).map_err(Failure::parse)?;
        let mu = sen::tensor_twist_solve(&a, &b).map_err(Failure::library)?;
        write_string(out, &codec::character_weights_to_json(&mu))
    })
}

/// Schur twist solver on a weight system given as JSON.
///
/// # Safety
/// Arguments must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_schur_twist_solve(
    w: *const c_char,
    shape: *const c_char,
    out: *mut *mut c_char,
) -> StStatus {
    guard(|| {
        let a = codec::weight_system_from_json(&read_json(w)?).map_err(Failure::parse)?;
        let u = parse_shape(read_str(shape)?)?;
        let mu = sen::schur_twist_solve(&a, &u).map_err(Failure::library)?;
        write_string(out, &codec::character_weights_to_json(&mu))
    })
}

/// Runs the command-line front end with `argv[0..argc]` (excluding the
/// program name). The JSON report goes to `report` (possibly "null" for
/// usage errors) and the exit code to `code`.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_run(
    argv: *const *const c_char,
    argc: c_int,
    report: *mut *mut c_char,
    code: *mut c_int,
) -> StStatus {
    guard(|| {
        if argc < 0 || (argc > 0 && argv.is_null()) {
            return Err(Failure(StStatus::NullPointer, "bad argv".into()));
        }
        let mut args = vec!["schur-twist".to_string()];
        for i in 0..argc as usize {
            args.push(read_str(*argv.add(i))?.to_string());
        }
        let out = schur_twist::cli::run(args);
        write_out(code, out.code)?;
        write_string(report, &out.report)
    })
}
