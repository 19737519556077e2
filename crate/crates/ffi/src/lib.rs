//! C ABI for the splitsec verifier: an opaque configuration handle, plain
//! structs for the closed-form reports, and JSON strings for the richer
//! ones. Every fallible call returns a `SplitsecStatus`; the message behind
//! a failure is available per thread via [`splitsec_last_error`].
//!
//! The header `include/splitsec.h` is generated by cbindgen at build time.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use splitsec::gfp::PrimeModulus;
use splitsec::induction::{exp_bound, splitting_graph, verify_by_splitting, ReportVerdict};
use splitsec::secant::{secant_dim, Provenance, SecantQuery, SecantVerdict};
use splitsec::statements::{evaluate_statement, EvalConfig, StatementParams, Verdict};
use splitsec::Error;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SplitsecStatus {
    Ok = 0,
    /// invalid argument (null pointer, bad parameter range, composite prime)
    Argument = 1,
    /// descriptor or function-spec text failed to parse
    Parse = 2,
    /// work refused: the matrix would exceed the configured cell budget
    Capacity = 3,
    /// result does not fit the output representation
    Overflow = 4,
    Internal = 5,
}

/// Verdict for a secant-variety dimension query.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SplitsecVerdict {
    Nondefective = 0,
    DefectiveClosedForm = 1,
    Inconclusive = 2,
}

/// How a verdict was obtained.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SplitsecProvenance {
    ClosedForm = 0,
    Rank = 1,
    KnownResult = 2,
}

/// Report for one secant-variety query. Dimensions are projective;
/// `achieved_dim` is exact for closed-form verdicts and a lower bound for
/// inconclusive ones.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct SplitsecSecantReport {
    pub expected_dim: u64,
    pub achieved_dim: u64,
    pub defect: u64,
    pub verdict: SplitsecVerdict,
    pub provenance: SplitsecProvenance,
    pub seed: u64,
    pub prime: u32,
}

/// Opaque evaluation configuration. Create with [`splitsec_config_new`],
/// release with [`splitsec_config_free`].
pub struct SplitsecConfig {
    inner: EvalConfig,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_for(err: &Error) -> SplitsecStatus {
    set_last_error(err.to_string());
    match err {
        Error::Parse(_) => SplitsecStatus::Parse,
        Error::InvalidParams(_) | Error::InvalidPrime(_) | Error::NotApplicable(_) => {
            SplitsecStatus::Argument
        }
        Error::Capacity { .. } => SplitsecStatus::Capacity,
        Error::Overflow => SplitsecStatus::Overflow,
        _ => SplitsecStatus::Internal,
    }
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn splitsec_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn splitsec_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// New configuration with the defaults (p = 32003, seed 1, 3 attempts).
#[no_mangle]
pub extern "C" fn splitsec_config_new() -> *mut SplitsecConfig {
    Box::into_raw(Box::new(SplitsecConfig {
        inner: EvalConfig::default(),
    }))
}

/// # Safety
/// `cfg` must be a pointer from [`splitsec_config_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn splitsec_config_free(cfg: *mut SplitsecConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// # Safety
/// `cfg` must be a valid configuration handle.
#[no_mangle]
pub unsafe extern "C" fn splitsec_config_set_prime(
    cfg: *mut SplitsecConfig,
    prime: u32,
) -> SplitsecStatus {
    let Some(cfg) = cfg.as_mut() else {
        set_last_error("null config".into());
        return SplitsecStatus::Argument;
    };
    match PrimeModulus::new(prime) {
        Ok(p) => {
            cfg.inner.prime = p;
            SplitsecStatus::Ok
        }
        Err(e) => status_for(&e),
    }
}

/// # Safety
/// `cfg` must be a valid configuration handle.
#[no_mangle]
pub unsafe extern "C" fn splitsec_config_set_seed(cfg: *mut SplitsecConfig, seed: u64) {
    if let Some(cfg) = cfg.as_mut() {
        cfg.inner.seed = seed;
    }
}

/// # Safety
/// `cfg` must be a valid configuration handle.
#[no_mangle]
pub unsafe extern "C" fn splitsec_config_set_max_attempts(
    cfg: *mut SplitsecConfig,
    attempts: u32,
) -> SplitsecStatus {
    let Some(cfg) = cfg.as_mut() else {
        set_last_error("null config".into());
        return SplitsecStatus::Argument;
    };
    if attempts == 0 {
        set_last_error("max_attempts must be >= 1".into());
        return SplitsecStatus::Argument;
    }
    cfg.inner.max_attempts = attempts;
    SplitsecStatus::Ok
}

/// # Safety
/// `cfg` must be a valid configuration handle.
#[no_mangle]
pub unsafe extern "C" fn splitsec_config_set_cell_budget(cfg: *mut SplitsecConfig, cells: u64) {
    if let Some(cfg) = cfg.as_mut() {
        cfg.inner.cell_budget = cells;
    }
}

fn to_u64(value: &num_bigint::BigUint) -> Result<u64, SplitsecStatus> {
    num_traits::ToPrimitive::to_u64(value).ok_or_else(|| {
        set_last_error("dimension does not fit in 64 bits".into());
        SplitsecStatus::Overflow
    })
}

/// Dimension and defect of the s-th secant variety of the degree-d split
/// variety in projective n-space.
///
/// # Safety
/// `cfg` must be a valid configuration handle (or null for defaults) and
/// `out` must point to writable memory for one report.
#[no_mangle]
pub unsafe extern "C" fn splitsec_secant_dim(
    cfg: *const SplitsecConfig,
    n: u32,
    d: u32,
    s: u64,
    out: *mut SplitsecSecantReport,
) -> SplitsecStatus {
    let Some(out) = out.as_mut() else {
        set_last_error("null output pointer".into());
        return SplitsecStatus::Argument;
    };
    let config = cfg.as_ref().map_or_else(EvalConfig::default, |c| c.inner);
    let report = match secant_dim(&SecantQuery { n, d, s }, &config) {
        Ok(r) => r,
        Err(e) => return status_for(&e),
    };
    let expected = match to_u64(&report.expected_projective_dim) {
        Ok(v) => v,
        Err(status) => return status,
    };
    let achieved = match to_u64(&report.achieved_projective_dim) {
        Ok(v) => v,
        Err(status) => return status,
    };
    let defect = match to_u64(&report.defect) {
        Ok(v) => v,
        Err(status) => return status,
    };
    *out = SplitsecSecantReport {
        expected_dim: expected,
        achieved_dim: achieved,
        defect,
        verdict: match report.verdict {
            SecantVerdict::Nondefective => SplitsecVerdict::Nondefective,
            SecantVerdict::DefectiveByClosedForm => SplitsecVerdict::DefectiveClosedForm,
            SecantVerdict::Inconclusive => SplitsecVerdict::Inconclusive,
        },
        provenance: match report.provenance {
            Provenance::ClosedForm => SplitsecProvenance::ClosedForm,
            Provenance::Rank => SplitsecProvenance::Rank,
            Provenance::KnownResult => SplitsecProvenance::KnownResult,
        },
        seed: report.seed,
        prime: report.prime,
    };
    SplitsecStatus::Ok
}

fn string_out(text: String, out: *mut *mut c_char) -> SplitsecStatus {
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            SplitsecStatus::Ok
        }
        Err(_) => {
            set_last_error("output contained an interior NUL".into());
            SplitsecStatus::Internal
        }
    }
}

/// Evaluate a statement descriptor (same text syntax as the CLI) and return
/// the outcome as a JSON string. The caller owns the string and must free it
/// with [`splitsec_string_free`]. Verified statements set `*out_verified`.
///
/// # Safety
/// `descriptor` must be a NUL-terminated string; `out_json` and
/// `out_verified` must be writable (either may be null to skip it).
#[no_mangle]
pub unsafe extern "C" fn splitsec_statement_eval(
    cfg: *const SplitsecConfig,
    descriptor: *const c_char,
    out_json: *mut *mut c_char,
    out_verified: *mut bool,
) -> SplitsecStatus {
    if descriptor.is_null() {
        set_last_error("null descriptor".into());
        return SplitsecStatus::Argument;
    }
    let Ok(text) = CStr::from_ptr(descriptor).to_str() else {
        set_last_error("descriptor is not valid UTF-8".into());
        return SplitsecStatus::Parse;
    };
    let config = cfg.as_ref().map_or_else(EvalConfig::default, |c| c.inner);
    let params = match StatementParams::parse_descriptor(text) {
        Ok(p) => p,
        Err(e) => return status_for(&e),
    };
    let outcome = match evaluate_statement(&params, &config) {
        Ok(o) => o,
        Err(e) => return status_for(&e),
    };
    if let Some(flag) = out_verified.as_mut() {
        *flag = outcome.verdict == Verdict::Verified;
    }
    if out_json.is_null() {
        return SplitsecStatus::Ok;
    }
    let json = serde_json::json!({
        "descriptor": params.descriptor(),
        "count": outcome.a_value.to_string(),
        "ambient": outcome.ambient.to_string(),
        "target": outcome.target.to_string(),
        "abundancy": outcome.abundancy,
        "achieved_rank": outcome.achieved_rank,
        "verdict": outcome.verdict,
        "seed": outcome.seed,
        "prime": outcome.prime,
        "attempts": outcome.attempts,
    });
    string_out(json.to_string(), out_json)
}

/// Largest certified summand count for d >= n >= 4 via the splitting-graph
/// bound.
///
/// # Safety
/// `out_c` and `out_bound` must be writable (either may be null).
#[no_mangle]
pub unsafe extern "C" fn splitsec_exp_bound(
    n: u32,
    d: u32,
    out_c: *mut u64,
    out_bound: *mut u64,
) -> SplitsecStatus {
    match exp_bound(n, d) {
        Ok(b) => {
            if let Some(c) = out_c.as_mut() {
                *c = b.c;
            }
            if let Some(bound) = out_bound.as_mut() {
                *bound = b.bound;
            }
            SplitsecStatus::Ok
        }
        Err(e) => status_for(&e),
    }
}

/// Splitting graph of the pure statement with s summands, in DOT format.
/// The caller owns the returned string.
///
/// # Safety
/// `out_dot` must be writable.
#[no_mangle]
pub unsafe extern "C" fn splitsec_split_graph_dot(
    n: u32,
    d: u32,
    s: u64,
    out_dot: *mut *mut c_char,
) -> SplitsecStatus {
    if out_dot.is_null() {
        set_last_error("null output pointer".into());
        return SplitsecStatus::Argument;
    }
    if n < 4 || n > 60 || s == 0 || s % (1u64 << (n.clamp(4, 60) - 3)) != 0 {
        set_last_error("need n in 4..=60 and s a positive multiple of 2^(n-3)".into());
        return SplitsecStatus::Argument;
    }
    match splitting_graph(n, d, s >> (n - 3)) {
        Ok(graph) => string_out(graph.to_dot(), out_dot),
        Err(e) => status_for(&e),
    }
}

/// Verify a pure statement through its splitting graph (envelope route).
/// Sets `*out_verified` when every sink passes.
///
/// # Safety
/// `cfg` may be null (defaults); `out_verified` must be writable.
#[no_mangle]
pub unsafe extern "C" fn splitsec_verify_by_splitting(
    cfg: *const SplitsecConfig,
    n: u32,
    d: u32,
    s: u64,
    out_verified: *mut bool,
) -> SplitsecStatus {
    let Some(out) = out_verified.as_mut() else {
        set_last_error("null output pointer".into());
        return SplitsecStatus::Argument;
    };
    let config = cfg.as_ref().map_or_else(EvalConfig::default, |c| c.inner);
    match verify_by_splitting(n, d, s, &config, false) {
        Ok(report) => {
            *out = report.verdict == ReportVerdict::Verified;
            SplitsecStatus::Ok
        }
        Err(e) => status_for(&e),
    }
}

/// Free a string returned by this library.
///
/// # Safety
/// `s` must be a pointer previously returned by a `splitsec_*` call that
/// transfers ownership, and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn splitsec_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
