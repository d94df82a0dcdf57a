//! C ABI over `robinbox`.
//!
//! Every function returns an [`RbStatus`] and writes results through out
//! pointers, which are left untouched on failure. Boxes are opaque
//! [`RbBox`] handles owned by the caller and released with
//! [`rb_box_free`]. Panics never cross the boundary; they surface as
//! `RB_STATUS_PANIC`. The message of the most recent failure on the calling
//! thread is available from [`rb_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use robinbox::boxes::{self, BoxGeometry};
use robinbox::interval::{self, IntervalGeometry};
use robinbox::{basisfn, shapes, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NumericalFailure = 3,
    AlphaZero = 4,
    Inconsistent = 5,
    Panic = 6,
}

/// A rectangular box `(-w_1, w_1) × … × (-w_n, w_n)`.
pub struct RbBox {
    geom: BoxGeometry,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> RbStatus {
    match e {
        Error::Domain { .. }
        | Error::InvalidGeometry(_)
        | Error::InvalidParameter(_)
        | Error::Dimension { .. } => RbStatus::InvalidArgument,
        Error::AlphaZero => RbStatus::AlphaZero,
        Error::Inconsistent { .. } => RbStatus::Inconsistent,
        Error::NoSignChange { .. }
        | Error::MaxIterExceeded { .. }
        | Error::BracketNotFound { .. }
        | Error::NumericalFailure(_) => RbStatus::NumericalFailure,
    }
}

/// Runs `body` with panics contained and errors recorded.
fn guard(body: impl FnOnce() -> Result<(), RbFail>) -> RbStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => RbStatus::Ok,
        Ok(Err(RbFail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            RbStatus::Panic
        }
    }
}

struct RbFail(RbStatus, String);

impl From<Error> for RbFail {
    fn from(e: Error) -> Self {
        RbFail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> RbFail {
    RbFail(RbStatus::NullPointer, format!("{what} is null"))
}

/// Borrows a handle, rejecting null.
unsafe fn handle<'a>(b: *const RbBox) -> Result<&'a RbBox, RbFail> {
    b.as_ref().ok_or_else(|| null("box handle"))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), RbFail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

/// Static description of a status code. Never null.
#[no_mangle]
pub extern "C" fn rb_status_message(status: RbStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        RbStatus::Ok => b"ok\0",
        RbStatus::NullPointer => b"null pointer\0",
        RbStatus::InvalidArgument => b"invalid argument\0",
        RbStatus::NumericalFailure => b"numerical failure\0",
        RbStatus::AlphaZero => b"undefined at alpha = 0\0",
        RbStatus::Inconsistent => b"inconsistent eigenvalue data\0",
        RbStatus::Panic => b"internal panic\0",
    };
    s.as_ptr().cast()
}

/// Message of the last failure on this thread, empty if none. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn rb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates a box from `n` positive half-widths.
///
/// # Safety
/// `half_widths` must point to `n` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rb_box_new(
    half_widths: *const f64,
    n: usize,
    out: *mut *mut RbBox,
) -> RbStatus {
    guard(|| {
        if half_widths.is_null() {
            return Err(null("half_widths"));
        }
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let w = std::slice::from_raw_parts(half_widths, n).to_vec();
        let geom = BoxGeometry::new(w)?;
        out.write(Box::into_raw(Box::new(RbBox { geom })));
        Ok(())
    })
}

/// Releases a box. Null is ignored.
///
/// # Safety
/// `b` must come from [`rb_box_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rb_box_free(b: *mut RbBox) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// # Safety
/// `b` must be a live handle or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rb_box_dim(b: *const RbBox, out: *mut usize) -> RbStatus {
    guard(|| write(out, handle(b)?.geom.dim()))
}

/// First Robin eigenvalue.
///
/// # Safety
/// `b` must be a live handle or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rb_box_lambda1(b: *const RbBox, alpha: f64, out: *mut f64) -> RbStatus {
    guard(|| {
        let v = boxes::lambda1_box(&handle(b)?.geom, alpha)?;
        write(out, v)
    })
}

/// Second Robin eigenvalue.
///
/// # Safety
/// `b` must be a live handle or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rb_box_lambda2(b: *const RbBox, alpha: f64, out: *mut f64) -> RbStatus {
    guard(|| {
        let v = boxes::lambda2_box(&handle(b)?.geom, alpha)?;
        write(out, v)
    })
}

/// `λ₂ - λ₁`.
///
/// # Safety
/// `b` must be a live handle or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rb_box_gap(b: *const RbBox, alpha: f64, out: *mut f64) -> RbStatus {
    guard(|| {
        let v = boxes::gap_box(&handle(b)?.geom, alpha)?;
        write(out, v)
    })
}

/// `λ₂/|λ₁|`; `RB_STATUS_ALPHA_ZERO` at `alpha = 0`.
///
/// # Safety
/// `b` must be a live handle or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rb_box_ratio(b: *const RbBox, alpha: f64, out: *mut f64) -> RbStatus {
    guard(|| {
        let v = boxes::ratio_box(&handle(b)?.geom, alpha)?;
        write(out, v)
    })
}

/// First nonzero Steklov eigenvalue.
///
/// # Safety
/// `b` must be a live handle or null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rb_box_steklov(b: *const RbBox, out: *mut f64) -> RbStatus {
    guard(|| {
        let v = boxes::steklov_sigma1(&handle(b)?.geom)?;
        write(out, v)
    })
}

/// The `k` lowest eigenvalues in increasing order, written to `out[0..k]`.
///
/// # Safety
/// `b` must be a live handle or null; `out` must have room for `k` doubles.
#[no_mangle]
pub unsafe extern "C" fn rb_box_spectrum(
    b: *const RbBox,
    alpha: f64,
    k: usize,
    out: *mut f64,
) -> RbStatus {
    guard(|| {
        let g = handle(b)?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        if k == 0 {
            return Err(RbFail(RbStatus::InvalidArgument, "k must be at least 1".into()));
        }
        let values = boxes::spectrum_box(&g.geom, alpha, k)?.values();
        ptr::copy_nonoverlapping(values.as_ptr(), out, k);
        Ok(())
    })
}

/// First eigenvalue of `(-t, t)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rb_interval_lambda1(t: f64, alpha: f64, out: *mut f64) -> RbStatus {
    guard(|| {
        let v = interval::lambda1_interval(IntervalGeometry::new(t)?, alpha)?;
        write(out, v)
    })
}

/// Second eigenvalue of `(-t, t)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rb_interval_lambda2(t: f64, alpha: f64, out: *mut f64) -> RbStatus {
    guard(|| {
        let v = interval::lambda2_interval(IntervalGeometry::new(t)?, alpha)?;
        write(out, v)
    })
}

/// Gap of `(-t, t)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rb_interval_gap(t: f64, alpha: f64, out: *mut f64) -> RbStatus {
    guard(|| {
        let v = interval::gap_interval(IntervalGeometry::new(t)?, alpha)?;
        write(out, v)
    })
}

/// The critical parameter `α₊ ≈ 33.2054`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rb_alpha_plus(out: *mut f64) -> RbStatus {
    guard(|| write(out, basisfn::alpha_plus()?))
}

/// The critical parameter `α₋ ≈ -9.3885`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rb_alpha_minus(out: *mut f64) -> RbStatus {
    guard(|| write(out, basisfn::alpha_minus()?))
}

/// Recovers the half-widths `t >= s` of the rectangle whose first two
/// eigenvalues at `alpha` are `lambda1`, `lambda2`. `residual` may be null.
///
/// # Safety
/// `t_out` and `s_out` must be writable; `residual` writable or null.
#[no_mangle]
pub unsafe extern "C" fn rb_hear_rectangle(
    lambda1: f64,
    lambda2: f64,
    alpha: f64,
    t_out: *mut f64,
    s_out: *mut f64,
    residual: *mut f64,
) -> RbStatus {
    guard(|| {
        if t_out.is_null() || s_out.is_null() {
            return Err(null("output pointer"));
        }
        let h = shapes::hear_rectangle(lambda1, lambda2, alpha)?;
        let w = h.geometry.half_widths();
        t_out.write(w[0]);
        s_out.write(w[1]);
        if !residual.is_null() {
            residual.write(h.residual);
        }
        Ok(())
    })
}
