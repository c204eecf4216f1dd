//! C interface to permutokit.
//!
//! Every function returns a [`PkStatus`]. Results come back through out
//! parameters; strings handed to the caller are NUL-terminated UTF-8 and must
//! be released with [`pk_string_free`]. After a failure,
//! [`pk_last_error_message`] describes it on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use permutokit::cli::{self, CheckArgs, Options, Target};
use permutokit::sections::global_sections;
use permutokit::{BooleanFunction, Composition};
use serde_json::Value;

/// Status codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PkStatus {
    Ok = 0,
    /// The operation ran and reported a failed law.
    LawViolation = 1,
    /// Malformed JSON, a failed precondition or an unknown name.
    Invalid = 2,
    NullPointer = 3,
    Utf8 = 4,
    Panic = 5,
}

/// A set composition.
pub struct PkComposition(Composition);

/// An integer-valued Boolean function.
pub struct PkBooleanFunction(BooleanFunction);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(PkStatus, String);

impl From<permutokit::Error> for Failure {
    fn from(e: permutokit::Error) -> Self {
        Failure(PkStatus::Invalid, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `f`, recording its error and mapping panics to [`PkStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<PkStatus, Failure>) -> PkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Failure(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            PkStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(PkStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(PkStatus::Utf8, format!("{what} is not UTF-8")))
}

unsafe fn json_arg(p: *const c_char, what: &str) -> Result<Value, Failure> {
    let s = str_arg(p, what)?;
    serde_json::from_str(s).map_err(|e| Failure(PkStatus::Invalid, format!("{what} is not valid JSON: {e}")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(PkStatus::NullPointer, format!("{what} is null")))
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(PkStatus::NullPointer, "out is null".into()));
    }
    Ok(())
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), Failure> {
    check_out(out)?;
    out.write(v);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    check_out(out)?;
    let c = CString::new(s).map_err(|_| Failure(PkStatus::Invalid, "output contains NUL".into()))?;
    write_out(out, c.into_raw())
}

unsafe fn write_box<T>(out: *mut *mut T, v: T) -> Result<(), Failure> {
    check_out(out)?;
    write_out(out, Box::into_raw(Box::new(v)))
}

fn from_json<T: serde::de::DeserializeOwned>(v: Value) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure(PkStatus::Invalid, e.to_string()))
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn pk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn pk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Runs one operation exactly as `permutokit <group> <op>` would, with
/// `input_json` in place of stdin (ignored by `opens check-indexing`).
/// On [`PkStatus::Ok`] or [`PkStatus::LawViolation`], `*out` receives the
/// JSON document the command line prints.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_run(
    group: *const c_char,
    op: *const c_char,
    input_json: *const c_char,
    bound: u32,
    size: usize,
    out: *mut *mut c_char,
) -> PkStatus {
    guard(|| {
        let group = str_arg(group, "group")?;
        let op = str_arg(op, "op")?;
        let input = if (group, op) == ("opens", "check-indexing") { Value::Null } else { json_arg(input_json, "input")? };
        let outcome = cli::dispatch(group, op, &input, &Options { bound, size })?;
        write_string(out, outcome.document().to_string())?;
        Ok(if outcome.violation { PkStatus::LawViolation } else { PkStatus::Ok })
    })
}

/// Runs the law harness on `instance` (`sigma`, `o-bullet`, `bf`, `points`,
/// `co` or `cbf`) over a ground set of `size` labels, writing the report
/// document to `*out`.
///
/// # Safety
/// `instance` must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_check(instance: *const c_char, size: usize, seed: u64, budget: u64, mutate: bool, out: *mut *mut c_char) -> PkStatus {
    guard(|| {
        let instance: Target = str_arg(instance, "instance")?.parse()?;
        let args = CheckArgs { instance, size, seed, budget, mutate };
        let (outcome, _) = cli::check_outcome(&args)?;
        write_string(out, outcome.document().to_string())?;
        Ok(if outcome.violation { PkStatus::LawViolation } else { PkStatus::Ok })
    })
}

/// Parses a composition such as `[[1],[2,3]]`.
///
/// # Safety
/// `json` must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_composition_from_json(json: *const c_char, out: *mut *mut PkComposition) -> PkStatus {
    guard(|| {
        let c: Composition = from_json(json_arg(json, "json")?)?;
        write_box(out, PkComposition(c))?;
        Ok(PkStatus::Ok)
    })
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_composition_to_json(c: *const PkComposition, out: *mut *mut c_char) -> PkStatus {
    guard(|| {
        let c = handle(c, "composition")?;
        write_string(out, serde_json::to_string(&c.0).unwrap())?;
        Ok(PkStatus::Ok)
    })
}

/// Number of lumps.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_composition_len(c: *const PkComposition, out: *mut usize) -> PkStatus {
    guard(|| {
        write_out(out, handle(c, "composition")?.0.len())?;
        Ok(PkStatus::Ok)
    })
}

/// The Tits product `FG`, as a new handle.
///
/// # Safety
/// `f` and `g` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_composition_tits(f: *const PkComposition, g: *const PkComposition, out: *mut *mut PkComposition) -> PkStatus {
    guard(|| {
        let fg = handle(f, "f")?.0.tits_product(&handle(g, "g")?.0)?;
        write_box(out, PkComposition(fg))?;
        Ok(PkStatus::Ok)
    })
}

/// Whether `g ≤ f`, i.e. `g` merges contiguous lumps of `f`.
///
/// # Safety
/// `g` and `f` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_composition_leq(g: *const PkComposition, f: *const PkComposition, out: *mut bool) -> PkStatus {
    guard(|| {
        let leq = handle(g, "g")?.0.leq(&handle(f, "f")?.0)?;
        write_out(out, leq)?;
        Ok(PkStatus::Ok)
    })
}

/// # Safety
/// `c` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn pk_composition_free(c: *mut PkComposition) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Parses `{"ground": [...], "values": {...}}`.
///
/// # Safety
/// `json` must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_boolfun_from_json(json: *const c_char, out: *mut *mut PkBooleanFunction) -> PkStatus {
    guard(|| {
        let z: BooleanFunction = from_json(json_arg(json, "json")?)?;
        write_box(out, PkBooleanFunction(z))?;
        Ok(PkStatus::Ok)
    })
}

/// # Safety
/// `z` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_boolfun_to_json(z: *const PkBooleanFunction, out: *mut *mut c_char) -> PkStatus {
    guard(|| {
        let z = handle(z, "boolean function")?;
        write_string(out, serde_json::to_string(&z.0).unwrap())?;
        Ok(PkStatus::Ok)
    })
}

/// The product `z1 | z2` over the disjoint union of the grounds.
///
/// # Safety
/// `z1` and `z2` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_boolfun_mul(z1: *const PkBooleanFunction, z2: *const PkBooleanFunction, out: *mut *mut PkBooleanFunction) -> PkStatus {
    guard(|| {
        let z = handle(z1, "z1")?.0.mul(&handle(z2, "z2")?.0)?;
        write_box(out, PkBooleanFunction(z))?;
        Ok(PkStatus::Ok)
    })
}

/// # Safety
/// `z` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_boolfun_is_submodular(z: *const PkBooleanFunction, out: *mut bool) -> PkStatus {
    guard(|| {
        write_out(out, handle(z, "boolean function")?.0.is_submodular())?;
        Ok(PkStatus::Ok)
    })
}

/// Number of integer points of the polytope of `z`.
///
/// # Safety
/// `z` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pk_sections_count(z: *const PkBooleanFunction, out: *mut usize) -> PkStatus {
    guard(|| {
        write_out(out, global_sections(&handle(z, "boolean function")?.0).len())?;
        Ok(PkStatus::Ok)
    })
}

/// # Safety
/// `z` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn pk_boolfun_free(z: *mut PkBooleanFunction) {
    if !z.is_null() {
        drop(Box::from_raw(z));
    }
}
