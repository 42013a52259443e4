//! C ABI over the scroll-ulrich engine.
//!
//! Every entry point returns an [`SuStatus`]; results go through out-pointers.
//! Handles are opaque and must be released with the matching `*_free`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;
use scroll_ulrich::registry::{verify_claims, Registry};
use scroll_ulrich::report::ReportDocument;
use scroll_ulrich::scroll::coh_scroll_line;
use scroll_ulrich::tower::moduli_dim;
use scroll_ulrich::ulrich::{is_ulrich_line, UlrichStatus};
use scroll_ulrich::{DivisorClass, EngineError, ScrollParams, TowerSpec};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParams = 2,
    InvalidArgument = 3,
    Unavailable = 4,
    Overflow = 5,
    Internal = 6,
}

/// Ulrich verdict codes written by [`su_is_ulrich_line`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuUlrich {
    NotUlrich = 0,
    Ulrich = 1,
    Undecided = 2,
}

/// Opaque scroll parameters.
pub struct SuParams(ScrollParams);

/// Opaque extension tower.
pub struct SuTower(TowerSpec);

fn status_of(e: &EngineError) -> SuStatus {
    match e {
        EngineError::InvalidParams { .. } => SuStatus::InvalidParams,
        EngineError::ConstituentUnavailable { .. } => SuStatus::Unavailable,
        EngineError::UnknownConstituent(_)
        | EngineError::EmptyTower
        | EngineError::NegativeSymPower(_)
        | EngineError::ZeroRank
        | EngineError::Registry(_)
        | EngineError::Formula { .. } => SuStatus::InvalidArgument,
        EngineError::NonIntegralChi(_) | EngineError::OracleMismatch { .. } => SuStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> SuStatus) -> SuStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(SuStatus::Internal)
}

unsafe fn params_ref<'a>(p: *const SuParams) -> Option<&'a ScrollParams> {
    p.as_ref().map(|p| &p.0)
}

unsafe fn put_params(r: Result<ScrollParams, EngineError>, out: *mut *mut SuParams) -> SuStatus {
    if out.is_null() {
        return SuStatus::NullPointer;
    }
    *out = ptr::null_mut();
    match r {
        Ok(p) => {
            *out = Box::into_raw(Box::new(SuParams(p)));
            SuStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn su_status_message(status: SuStatus) -> *const c_char {
    let s: &'static CStr = match status {
        SuStatus::Ok => c"ok",
        SuStatus::NullPointer => c"null pointer argument",
        SuStatus::InvalidParams => c"invalid scroll parameters",
        SuStatus::InvalidArgument => c"invalid argument",
        SuStatus::Unavailable => c"constituent not defined for these parameters",
        SuStatus::Overflow => c"value does not fit in 64 bits",
        SuStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn su_params_new(
    e: i64,
    b: i64,
    k: i64,
    out: *mut *mut SuParams,
) -> SuStatus {
    guard(|| put_params(ScrollParams::new(e, b, k), out))
}

/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn su_params_sporadic(t: i64, out: *mut *mut SuParams) -> SuStatus {
    guard(|| put_params(ScrollParams::sporadic(t), out))
}

/// # Safety
/// `p` must be null or a handle from `su_params_new`/`su_params_sporadic` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn su_params_free(p: *mut SuParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Cohomology of `x xi + (alpha, beta)`. Writes lower and upper bounds for
/// `h^0..h^3` into `lo[4]`, `hi[4]` and the Euler characteristic into `chi`.
///
/// # Safety
/// `p` must be a live handle; `lo` and `hi` must point to four writable `int64_t`.
#[no_mangle]
pub unsafe extern "C" fn su_coh_scroll_line(
    p: *const SuParams,
    x: i64,
    alpha: i64,
    beta: i64,
    lo: *mut i64,
    hi: *mut i64,
    chi: *mut i64,
) -> SuStatus {
    guard(|| {
        let Some(params) = params_ref(p) else {
            return SuStatus::NullPointer;
        };
        if lo.is_null() || hi.is_null() || chi.is_null() {
            return SuStatus::NullPointer;
        }
        let c = coh_scroll_line(params, DivisorClass::new(x, alpha, beta));
        for (i, d) in c.dims.iter().enumerate() {
            *lo.add(i) = d.lo;
            *hi.add(i) = d.hi;
        }
        *chi = c.chi;
        SuStatus::Ok
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn su_chi_line(
    p: *const SuParams,
    x: i64,
    alpha: i64,
    beta: i64,
    out: *mut i64,
) -> SuStatus {
    guard(|| {
        let Some(params) = params_ref(p) else {
            return SuStatus::NullPointer;
        };
        if out.is_null() {
            return SuStatus::NullPointer;
        }
        *out = scroll_ulrich::riemann_roch::chi_line(params, DivisorClass::new(x, alpha, beta));
        SuStatus::Ok
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn su_is_ulrich_line(
    p: *const SuParams,
    x: i64,
    alpha: i64,
    beta: i64,
    out: *mut SuUlrich,
) -> SuStatus {
    guard(|| {
        let Some(params) = params_ref(p) else {
            return SuStatus::NullPointer;
        };
        if out.is_null() {
            return SuStatus::NullPointer;
        }
        *out = match is_ulrich_line(params, DivisorClass::new(x, alpha, beta)).status {
            UlrichStatus::Ulrich => SuUlrich::Ulrich,
            UlrichStatus::NotUlrich => SuUlrich::NotUlrich,
            UlrichStatus::Undecided => SuUlrich::Undecided,
        };
        SuStatus::Ok
    })
}

/// Tower from a comma- or space-separated constituent list such as `"M1,M2,L2"`.
///
/// # Safety
/// `p` must be a live handle, `spec` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn su_tower_new(
    p: *const SuParams,
    spec: *const c_char,
    out: *mut *mut SuTower,
) -> SuStatus {
    guard(|| {
        let Some(params) = params_ref(p) else {
            return SuStatus::NullPointer;
        };
        if spec.is_null() || out.is_null() {
            return SuStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let Ok(s) = CStr::from_ptr(spec).to_str() else {
            return SuStatus::InvalidArgument;
        };
        match TowerSpec::parse(params, s) {
            Ok(t) => {
                *out = Box::into_raw(Box::new(SuTower(t)));
                SuStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// # Safety
/// `t` must be null or a handle from `su_tower_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn su_tower_free(t: *mut SuTower) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn su_tower_rank(t: *const SuTower, out: *mut i64) -> SuStatus {
    guard(|| match (t.as_ref(), out.is_null()) {
        (Some(t), false) => {
            *out = t.0.rank();
            SuStatus::Ok
        }
        _ => SuStatus::NullPointer,
    })
}

/// `1 - chi(G (x) G^dual)`.
///
/// # Safety
/// `t` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn su_tower_moduli_dim(t: *const SuTower, out: *mut i64) -> SuStatus {
    guard(|| {
        let (Some(t), false) = (t.as_ref(), out.is_null()) else {
            return SuStatus::NullPointer;
        };
        match moduli_dim(&t.0) {
            Ok(v) => match v.to_i64() {
                Some(v) => {
                    *out = v;
                    SuStatus::Ok
                }
                None => SuStatus::Overflow,
            },
            Err(e) => status_of(&e),
        }
    })
}

/// JSON report of the built-in claim registry over `t_min..=t_max`,
/// `r_min..=r_max`. Release the string with [`su_string_free`].
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn su_report_json(
    t_min: i64,
    t_max: i64,
    r_min: i64,
    r_max: i64,
    out: *mut *mut c_char,
) -> SuStatus {
    guard(|| {
        if out.is_null() {
            return SuStatus::NullPointer;
        }
        *out = ptr::null_mut();
        if t_min > t_max || r_min > r_max {
            return SuStatus::InvalidArgument;
        }
        let reg = Registry::builtin();
        let doc = ReportDocument {
            t_range: t_min..=t_max,
            r_range: r_min..=r_max,
            claims: reg.claims().iter().map(|c| c.id().to_string()).collect(),
            results: verify_claims(t_min..=t_max, r_min..=r_max, &reg),
        };
        match CString::new(doc.to_json()) {
            Ok(s) => {
                *out = s.into_raw();
                SuStatus::Ok
            }
            Err(_) => SuStatus::Internal,
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn su_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
