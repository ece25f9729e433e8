//! C ABI for `stringy-core`.
//!
//! Every entry point returns a [`StringyStatus`] and writes its result
//! through an out-pointer. Polynomials and verdicts are opaque handles that
//! must be released with their `*_free` function; strings returned by the
//! library are released with [`stringy_string_free`]. On failure the
//! message is available from [`stringy_last_error_message`] on the same
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use stringy_core::exact::Poly;
use stringy_core::strata::{stratum_poly, StratumId};
use stringy_core::stringy::{numerator_n, verdict_with, Verdict, VerdictOptions};
use stringy_core::{goettsche, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StringyStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidN = 3,
    MethodDisagreement = 4,
    Internal = 5,
}

/// Opaque exact polynomial.
pub struct StringyPoly(Poly);

/// Opaque polynomiality verdict.
pub struct StringyVerdict(Verdict);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> StringyStatus {
    match e {
        Error::InvalidN { .. } => StringyStatus::InvalidN,
        Error::InvalidArgument(_) => StringyStatus::InvalidArgument,
        Error::MethodDisagreement { .. } => StringyStatus::MethodDisagreement,
        _ => StringyStatus::Internal,
    }
}

/// Run `f`, translating errors and panics into status codes.
fn guard<F>(f: F) -> StringyStatus
where
    F: FnOnce() -> Result<(), (StringyStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            StringyStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            StringyStatus::Internal
        }
    }
}

fn lift(e: Error) -> (StringyStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (StringyStatus, String) {
    (StringyStatus::NullPointer, format!("{what} is null"))
}

unsafe fn put_poly(out: *mut *mut StringyPoly, p: Poly) {
    *out = Box::into_raw(Box::new(StringyPoly(p)));
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (StringyStatus, String)> {
    let c = CString::new(s).map_err(|_| (StringyStatus::Internal, "interior NUL".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

fn poly_entry<F>(out: *mut *mut StringyPoly, f: F) -> StringyStatus
where
    F: FnOnce() -> Result<Poly, Error>,
{
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = f().map_err(lift)?;
        unsafe { put_poly(out, p) };
        Ok(())
    })
}

/// `P(J^[n]; z)` for the abelian surface, `n >= 1`.
#[no_mangle]
pub extern "C" fn stringy_hilb_poincare(n: usize, out: *mut *mut StringyPoly) -> StringyStatus {
    poly_entry(out, || goettsche::hilb_poincare(n))
}

/// `P(J^[n] x J^; z)`, `n >= 1`.
#[no_mangle]
pub extern "C" fn stringy_jn_times_dual(n: usize, out: *mut *mut StringyPoly) -> StringyStatus {
    poly_entry(out, || goettsche::jn_times_dual(n))
}

/// E-polynomial of a stratum named like `D123` or `D2o`, `n >= 2`.
///
/// # Safety
/// `id` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn stringy_stratum(
    id: *const c_char,
    n: usize,
    out: *mut *mut StringyPoly,
) -> StringyStatus {
    if id.is_null() {
        set_error("id is null");
        return StringyStatus::NullPointer;
    }
    let id = CStr::from_ptr(id).to_string_lossy().into_owned();
    poly_entry(out, || {
        let id: StratumId = id.parse()?;
        stratum_poly(id, n)
    })
}

/// `N(z)`, the numerator of the singular contribution, `n >= 2`.
#[no_mangle]
pub extern "C" fn stringy_numerator(n: usize, out: *mut *mut StringyPoly) -> StringyStatus {
    poly_entry(out, || numerator_n(n))
}

/// Degree of a polynomial, `-1` for zero.
///
/// # Safety
/// `p` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn stringy_poly_degree(p: *const StringyPoly, out: *mut i64) -> StringyStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("poly"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = p.0.degree().map_or(-1, |d| d as i64);
        Ok(())
    })
}

/// Canonical text form, e.g. `1 - 4*z + 6*z^2`.
///
/// # Safety
/// `p` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn stringy_poly_to_text(
    p: *const StringyPoly,
    out: *mut *mut c_char,
) -> StringyStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("poly"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        put_string(out, p.0.to_string())
    })
}

/// JSON form `{"var":"z","coeffs":["1","-4",...]}`.
///
/// # Safety
/// `p` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn stringy_poly_to_json(
    p: *const StringyPoly,
    out: *mut *mut c_char,
) -> StringyStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("poly"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let s = serde_json::to_string(&p.0).map_err(|e| (StringyStatus::Internal, e.to_string()))?;
        put_string(out, s)
    })
}

/// # Safety
/// `p` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stringy_poly_free(p: *mut StringyPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Run all polynomiality methods for `n >= 2`.
///
/// # Safety
/// `out` must be null or valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn stringy_verdict(
    n: usize,
    include_d2: bool,
    out: *mut *mut StringyVerdict,
) -> StringyStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let opts = VerdictOptions {
            include_d2,
            ..VerdictOptions::default()
        };
        let v = verdict_with(n, opts).map_err(lift)?;
        *out = Box::into_raw(Box::new(StringyVerdict(v)));
        Ok(())
    })
}

/// # Safety
/// `v` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn stringy_verdict_is_polynomial(
    v: *const StringyVerdict,
    out: *mut bool,
) -> StringyStatus {
    guard(|| {
        let v = v.as_ref().ok_or_else(|| null("verdict"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = v.0.is_polynomial;
        Ok(())
    })
}

/// The verdict report as JSON.
///
/// # Safety
/// `v` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn stringy_verdict_to_json(
    v: *const StringyVerdict,
    out: *mut *mut c_char,
) -> StringyStatus {
    guard(|| {
        let v = v.as_ref().ok_or_else(|| null("verdict"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        put_string(out, v.0.to_json())
    })
}

/// # Safety
/// `v` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stringy_verdict_free(v: *mut StringyVerdict) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stringy_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into the library.
#[no_mangle]
pub extern "C" fn stringy_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
