//! C ABI for the subsystem-codes engine.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call
//! returns an [`ScStatus`]; on failure [`sc_last_error_message`] describes
//! the error on the calling thread. Strings returned through `char **`
//! outputs must be released with [`sc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use subsystem_codes::bounds::{gv_subsystem, lp_feasible, pure_singleton_check, ParameterQuery, Verdict};
use subsystem_codes::codespace::{parse_code, write_code, AdditiveCode};
use subsystem_codes::construct::SubsystemCode;
use subsystem_codes::distance::{min_weight, DistanceOptions, DistanceValue};
use subsystem_codes::report::{subsystem_document, Manifest};
use subsystem_codes::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    /// The code was built but carries no logical qudits (K = 1).
    Degenerate = 3,
    /// A hypothesis of the requested construction or bound is not met.
    Hypothesis = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScDistanceState {
    Exact = 0,
    /// `value` is a certified lower bound.
    LowerBound = 1,
    /// The searched set is empty; `value` is 0.
    Empty = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScDistance {
    pub value: u32,
    pub state: ScDistanceState,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScParams {
    pub n: u32,
    pub q: u32,
    /// K = p^log_p_k.
    pub log_p_k: u32,
    /// R = p^log_p_r.
    pub log_p_r: u32,
    pub p: u32,
    pub d: ScDistance,
    pub d_prime: ScDistance,
    /// 1 pure, 0 impure, -1 undecided at the chosen caps.
    pub pure_code: i32,
}

/// An additive code read from the code file format.
pub struct ScCode(AdditiveCode);

/// A subsystem code with its computed parameters.
pub struct ScSubsystem(SubsystemCode);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ScStatus {
    match e {
        Error::Hypothesis(_) => ScStatus::Hypothesis,
        Error::Invariant(_) | Error::Io(_) => ScStatus::Internal,
        _ => ScStatus::InvalidInput,
    }
}

/// Runs `f`, turning errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<ScStatus, (ScStatus, String)>) -> ScStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => {
            if s == ScStatus::Ok {
                set_error("");
            }
            s
        }
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            ScStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (ScStatus, String) {
    (status_of(&e), e.to_string())
}

fn null() -> (ScStatus, String) {
    (ScStatus::NullPointer, "null pointer argument".into())
}

fn distance(v: DistanceValue) -> ScDistance {
    match v {
        DistanceValue::Exact(d) => ScDistance { value: d as u32, state: ScDistanceState::Exact },
        DistanceValue::AtLeast(d) => ScDistance { value: d as u32, state: ScDistanceState::LowerBound },
        DistanceValue::Empty => ScDistance { value: 0, state: ScDistanceState::Empty },
    }
}

fn cap_opt(cap: u32) -> DistanceOptions {
    DistanceOptions::default().with_cap((cap > 0).then_some(cap as usize))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<ScStatus, (ScStatus, String)> {
    let c = CString::new(s).map_err(|_| (ScStatus::Internal, "string contains NUL".to_string()))?;
    *out = c.into_raw();
    Ok(ScStatus::Ok)
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn sc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a NUL-terminated code file into a new handle.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_code_parse(text: *const c_char, out: *mut *mut ScCode) -> ScStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| (ScStatus::InvalidInput, "code text is not UTF-8".to_string()))?;
        let code = parse_code(s).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(ScCode(code)));
        Ok(ScStatus::Ok)
    })
}

/// Serializes a code; release the string with `sc_string_free`.
///
/// # Safety
/// `code` must come from `sc_code_parse`; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_code_write(code: *const ScCode, out: *mut *mut c_char) -> ScStatus {
    guard(|| {
        if code.is_null() || out.is_null() {
            return Err(null());
        }
        write_string(out, write_code(&(*code).0))
    })
}

/// # Safety
/// `code` must come from `sc_code_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sc_code_free(code: *mut ScCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Minimum weight of the code in its natural metric. `cap` = 0 searches
/// exhaustively; otherwise weights below `cap` are searched.
///
/// # Safety
/// `code` must come from `sc_code_parse`; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_code_min_distance(code: *const ScCode, cap: u32, out: *mut ScDistance) -> ScStatus {
    guard(|| {
        if code.is_null() || out.is_null() {
            return Err(null());
        }
        let c = &(*code).0;
        let w = min_weight(c, c.space().default_metric(), &cap_opt(cap)).map_err(lib_err)?;
        *out = distance(w.value);
        Ok(ScStatus::Ok)
    })
}

/// Subsystem code defined by X (symplectic or over GF(q²)). `cap` bounds
/// both the distance and the purity searches as in `sc_code_min_distance`.
/// A degenerate code (K = 1) is still returned, with status `Degenerate`.
///
/// # Safety
/// `x` must come from `sc_code_parse`; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_subsystem_from_code(x: *const ScCode, cap: u32, out: *mut *mut ScSubsystem) -> ScStatus {
    guard(|| {
        if x.is_null() || out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let mut opts = cap_opt(cap);
        opts.purity_cap = opts.cap;
        let code = subsystem_codes::cli::code_from_x(&(*x).0, &opts).map_err(lib_err)?;
        let degenerate = code.is_degenerate();
        *out = Box::into_raw(Box::new(ScSubsystem(code)));
        if degenerate {
            set_error("the code has no logical qudits (K = 1)");
            return Ok(ScStatus::Degenerate);
        }
        Ok(ScStatus::Ok)
    })
}

/// # Safety
/// `code` must come from `sc_subsystem_from_code`; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_subsystem_params(code: *const ScSubsystem, out: *mut ScParams) -> ScStatus {
    guard(|| {
        if code.is_null() || out.is_null() {
            return Err(null());
        }
        let c = &(*code).0;
        *out = ScParams {
            n: c.n() as u32,
            q: c.q(),
            log_p_k: c.log_p_k() as u32,
            log_p_r: c.log_p_r() as u32,
            p: c.field().characteristic(),
            d: distance(c.distance().value),
            d_prime: distance(c.purity().value),
            pure_code: c.pure().map_or(-1, i32::from),
        };
        Ok(ScStatus::Ok)
    })
}

/// Flat `key: value` report of the code; release with `sc_string_free`.
///
/// # Safety
/// `code` must come from `sc_subsystem_from_code`; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_subsystem_report(code: *const ScSubsystem, out: *mut *mut c_char) -> ScStatus {
    guard(|| {
        if code.is_null() || out.is_null() {
            return Err(null());
        }
        let doc = subsystem_document(&(*code).0, &Manifest::new("ffi"));
        write_string(out, doc.render())
    })
}

/// # Safety
/// `code` must come from `sc_subsystem_from_code` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sc_subsystem_free(code: *mut ScSubsystem) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

fn query(n: u32, k: u32, r: u32, d: u32, q: u32) -> Result<ParameterQuery, (ScStatus, String)> {
    ParameterQuery::new(n as usize, q, k as usize, r as usize, d as usize).map_err(lib_err)
}

/// Sets `*infeasible` to 1 when the LP bound rules out [[n,k,r,d]]_q.
///
/// # Safety
/// `infeasible` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_bounds_lp(n: u32, k: u32, r: u32, d: u32, q: u32, infeasible: *mut i32) -> ScStatus {
    guard(|| {
        if infeasible.is_null() {
            return Err(null());
        }
        let rep = lp_feasible(&query(n, k, r, d, q)?).map_err(lib_err)?;
        *infeasible = i32::from(rep.verdict == Verdict::LpInfeasible);
        Ok(ScStatus::Ok)
    })
}

/// Sets `*exists` to 1 when the counting bound guarantees [[n,k,r,≥d]]_q.
///
/// # Safety
/// `exists` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_bounds_gv(n: u32, k: u32, r: u32, d: u32, q: u32, exists: *mut i32) -> ScStatus {
    guard(|| {
        if exists.is_null() {
            return Err(null());
        }
        let rep = gv_subsystem(&query(n, k, r, d, q)?).map_err(lib_err)?;
        *exists = i32::from(rep.verdict == Verdict::GvExists);
        Ok(ScStatus::Ok)
    })
}

/// Sets `*violated` to 1 when a pure [[n,k,r,d]]_q code would break
/// k + r ≤ n − 2d + 2.
///
/// # Safety
/// `violated` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sc_bounds_pure_singleton(n: u32, k: u32, r: u32, d: u32, q: u32, violated: *mut i32) -> ScStatus {
    guard(|| {
        if violated.is_null() {
            return Err(null());
        }
        let rep = pure_singleton_check(&query(n, k, r, d, q)?);
        *violated = i32::from(rep.verdict == Verdict::SingletonViolated);
        Ok(ScStatus::Ok)
    })
}
