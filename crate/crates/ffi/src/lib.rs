//! C ABI for locikit.
//!
//! Every function returns an [`LkStatus`]. Strings handed out by the library
//! are owned by the caller and must be released with [`lk_string_free`];
//! fixtures with [`lk_fixture_free`]. After a non-`OK` status,
//! [`lk_last_error_message`] describes the error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use locikit::fixture::Fixture;
use locikit::invariants::ModuleAnalysis;
use locikit::loci::{compute_locus, pointwise, LocusKind};
use locikit::qpoly::parse_poly;
use locikit::verify::run_fixture;
use locikit::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    NotFound = 5,
    InvalidArgument = 6,
    ResourceLimit = 7,
    Inconclusive = 8,
    HypothesisFailed = 9,
    Math = 10,
    Panic = 11,
}

/// A parsed and validated fixture.
pub struct LkFixture {
    inner: Fixture,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> LkStatus {
    match e {
        Error::Parse { .. } | Error::UnknownVariable(_) | Error::NegativeExponent => LkStatus::Parse,
        Error::Validation(_) | Error::DeclaredDecompositionInconsistent(_) => LkStatus::Validation,
        Error::NotFound(_) => LkStatus::NotFound,
        Error::InvalidArgument(_) => LkStatus::InvalidArgument,
        Error::ResourceLimit { .. } => LkStatus::ResourceLimit,
        Error::HypothesisFailed(_) => LkStatus::HypothesisFailed,
        _ => LkStatus::Math,
    }
}

struct Fail(LkStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `body`, turning errors and panics into a status and the thread's
/// last error message.
fn guard(body: impl FnOnce() -> Result<LkStatus, Fail>) -> LkStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(s)) => {
            if s == LkStatus::Ok {
                set_error("");
            }
            s
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("panic: {msg}"));
            LkStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(LkStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(LkStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn fixture_arg<'a>(fx: *const LkFixture) -> Result<&'a Fixture, Fail> {
    fx.as_ref().map(|f| &f.inner).ok_or_else(|| Fail(LkStatus::NullPointer, "fixture is null".into()))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| Fail(LkStatus::NullPointer, format!("{what} is null")))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn locus_arg(s: &str) -> Result<LocusKind, Fail> {
    Ok(s.parse::<LocusKind>()?)
}

fn analysis(fx: &Fixture, module: &str) -> Result<ModuleAnalysis, Fail> {
    Ok(ModuleAnalysis::new(fx.module(module)?).with_catalog(fx.sample_primes().to_vec()))
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn lk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; empty after a
/// successful call. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn lk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses fixture text.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lk_fixture_parse(text: *const c_char, out: *mut *mut LkFixture) -> LkStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let fx = Fixture::parse(str_arg(text, "text")?)?;
        *out = Box::into_raw(Box::new(LkFixture { inner: fx }));
        Ok(LkStatus::Ok)
    })
}

/// # Safety
/// `fx` must be null or a fixture from [`lk_fixture_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lk_fixture_free(fx: *mut LkFixture) {
    if !fx.is_null() {
        drop(Box::from_raw(fx));
    }
}

/// Canonical text of a fixture.
///
/// # Safety
/// `fx` must be a live fixture; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lk_fixture_print(fx: *const LkFixture, out: *mut *mut c_char) -> LkStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = to_c(fixture_arg(fx)?.print());
        Ok(LkStatus::Ok)
    })
}

/// Locus of a fixture module as JSON. `locus` is one of `supp`, `free`,
/// `cm`, `mcm`, `sn:N`, `tn:N`, `fid`, `gor`.
///
/// # Safety
/// `fx` must be a live fixture; strings NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lk_compute_locus_json(
    fx: *const LkFixture,
    module: *const c_char,
    locus: *const c_char,
    out: *mut *mut c_char,
) -> LkStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let fx = fixture_arg(fx)?;
        let a = analysis(fx, str_arg(module, "module")?)?;
        let rep = compute_locus(&a, locus_arg(str_arg(locus, "locus")?)?)?;
        *out = to_c(serde_json::to_string(&rep.to_json(fx.ring().names())).expect("json"));
        Ok(LkStatus::Ok)
    })
}

/// Whether a fixture prime lies in a locus: writes 1 or 0 to `out`.
/// Returns `LK_STATUS_INCONCLUSIVE` (leaving `out` untouched) when undecided.
///
/// # Safety
/// `fx` must be a live fixture; strings NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lk_member(
    fx: *const LkFixture,
    module: *const c_char,
    locus: *const c_char,
    prime: *const c_char,
    out: *mut i32,
) -> LkStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let fx = fixture_arg(fx)?;
        let kind = locus_arg(str_arg(locus, "locus")?)?;
        let p = fx.prime(str_arg(prime, "prime")?)?.clone();
        let a = analysis(fx, str_arg(module, "module")?)?;
        let rep = compute_locus(&a, kind)?;
        let answer = match rep.member(&p) {
            Some(b) => Some(b),
            None => pointwise(&a, kind, &p)?.as_bool(),
        };
        match answer {
            Some(b) => {
                *out = b as i32;
                Ok(LkStatus::Ok)
            }
            None => Err(Fail(LkStatus::Inconclusive, "membership is inconclusive within the budget".into())),
        }
    })
}

/// Runs the checks of a fixture (all when `check` is null) and writes the
/// JSON report and the exit code of the command-line tool (0 all as
/// expected, 1 unexpected verdict, 2 inconclusive).
///
/// # Safety
/// `fx` must be a live fixture; `check` null or NUL-terminated; `out_json`
/// and `out_exit` writable.
#[no_mangle]
pub unsafe extern "C" fn lk_verify_json(
    fx: *const LkFixture,
    check: *const c_char,
    out_json: *mut *mut c_char,
    out_exit: *mut i32,
) -> LkStatus {
    guard(|| {
        let out_json = out_arg(out_json, "out_json")?;
        let out_exit = out_arg(out_exit, "out_exit")?;
        let fx = fixture_arg(fx)?;
        let only = if check.is_null() { None } else { Some(str_arg(check, "check")?) };
        let report = run_fixture(fx, only)?;
        *out_json = to_c(report.to_json_string());
        *out_exit = report.exit_code();
        Ok(LkStatus::Ok)
    })
}

/// Normal form of a polynomial expression in the comma-separated variables
/// `vars`, printed canonically.
///
/// # Safety
/// Strings must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lk_poly_normalize(vars: *const c_char, expr: *const c_char, out: *mut *mut c_char) -> LkStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let names: Vec<String> =
            str_arg(vars, "vars")?.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect();
        let f = parse_poly(str_arg(expr, "expr")?, &names)?;
        *out = to_c(f.fmt_with(&names).to_string());
        Ok(LkStatus::Ok)
    })
}
