//! C interface to `d4verify`.
//!
//! Every fallible function returns a [`D4vStatus`] and writes its result
//! through an out-pointer. On failure, [`d4v_last_error`] returns a message
//! for the calling thread. Shells and τ2 tables are opaque handles released
//! with their `_free` function; strings returned by the library are released
//! with [`d4v_string_free`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;

use d4verify::exact::rat;
use d4verify::gegenbauer::{certify_code_bound, certify_design_bound};
use d4verify::lattice::{enumerate_shell, harmonic_strength, jacobi_count, Shell};
use d4verify::qseries::Tau2Table;
use d4verify::quaternion::decompose_and_certify;
use d4verify::verify::{verify_all, Profile};
use d4verify::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum D4vStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    CapExceeded = 3,
    IdentityFailed = 4,
    OutOfRange = 5,
    Io = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum D4vProfile {
    Quick = 0,
    Full = 1,
}

/// A 2m-shell of D4.
pub struct D4vShell(Shell);

/// τ2(1..=bound).
pub struct D4vTau2Table(Tau2Table);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> D4vStatus {
    match err {
        Error::InvalidArgument(_) | Error::Underdetermined { .. } | Error::NonCombinatorial(_) => {
            D4vStatus::InvalidArgument
        }
        Error::CapExceeded { .. } => D4vStatus::CapExceeded,
        Error::IdentityFailed { .. } => D4vStatus::IdentityFailed,
        Error::Io(_) => D4vStatus::Io,
    }
}

/// Runs `f`, recording errors and catching panics.
fn guard(f: impl FnOnce() -> Result<(), (D4vStatus, String)>) -> D4vStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => D4vStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            D4vStatus::Panic
        }
    }
}

fn lib<T>(r: d4verify::Result<T>) -> Result<T, (D4vStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (D4vStatus, String) {
    (D4vStatus::NullPointer, format!("{what} is null"))
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn d4v_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn d4v_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// |(D4)_{2m}| from the divisor formula.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn d4v_jacobi_count(m: u64, out: *mut u64) -> D4vStatus {
    guard(|| {
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        *out = lib(jacobi_count(m))?;
        Ok(())
    })
}

/// Enumerates the 2m-shell into a new handle.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn d4v_shell_new(m: u64, out: *mut *mut D4vShell) -> D4vStatus {
    guard(|| {
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        let shell = lib(enumerate_shell(m))?;
        *out = Box::into_raw(Box::new(D4vShell(shell)));
        Ok(())
    })
}

/// Number of points in the shell; 0 for a null handle.
///
/// # Safety
/// `shell` must be null or a live handle from [`d4v_shell_new`].
#[no_mangle]
pub unsafe extern "C" fn d4v_shell_len(shell: *const D4vShell) -> usize {
    unsafe { shell.as_ref() }.map_or(0, |s| s.0.len())
}

/// Copies the coordinates of point `index` (in sorted shell order) to `out[0..4]`.
///
/// # Safety
/// `shell` must be null or a live handle; `out` must be null or valid for
/// four writes.
#[no_mangle]
pub unsafe extern "C" fn d4v_shell_point(
    shell: *const D4vShell,
    index: usize,
    out: *mut i64,
) -> D4vStatus {
    guard(|| {
        let s = unsafe { shell.as_ref() }.ok_or_else(|| null("shell"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let p = s.0.points().get(index).ok_or_else(|| {
            (
                D4vStatus::OutOfRange,
                format!("index {index} >= shell size {}", s.0.len()),
            )
        })?;
        unsafe { ptr::copy_nonoverlapping(p.0.as_ptr(), out, 4) };
        Ok(())
    })
}

/// # Safety
/// `shell` must be null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn d4v_shell_free(shell: *mut D4vShell) {
    if !shell.is_null() {
        drop(unsafe { Box::from_raw(shell) });
    }
}

/// Bit ℓ of `*out_mask` is set when the normalized 2m-shell is a spherical
/// {ℓ}-design, for 1 ≤ ℓ ≤ max_degree (max_degree ≤ 63).
///
/// # Safety
/// `out_mask` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn d4v_harmonic_strength_mask(
    m: u64,
    max_degree: u32,
    out_mask: *mut u64,
) -> D4vStatus {
    guard(|| {
        let out = unsafe { out_mask.as_mut() }.ok_or_else(|| null("out_mask"))?;
        if max_degree > 63 {
            return Err((D4vStatus::OutOfRange, "max_degree must be <= 63".into()));
        }
        let shell = lib(enumerate_shell(m))?;
        let h = lib(harmonic_strength(&shell, max_degree))?;
        *out = (1..=max_degree)
            .filter(|&l| h.contains(l))
            .fold(0, |acc, l| acc | 1 << l);
        Ok(())
    })
}

/// Number of unit-group orbits in the 2m-shell, each certified as a copy of
/// the root system.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn d4v_orbit_count(m: u64, out: *mut u64) -> D4vStatus {
    guard(|| {
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        *out = lib(decompose_and_certify(m))?.orbits.len() as u64;
        Ok(())
    })
}

/// LP lower bound of the design certificate as a reduced fraction.
///
/// # Safety
/// `num` and `den` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn d4v_lp_design_bound(num: *mut i64, den: *mut i64) -> D4vStatus {
    guard(|| {
        let (n, d) = unsafe { (num.as_mut(), den.as_mut()) };
        let (n, d) = n.zip(d).ok_or_else(|| null("num/den"))?;
        let c = lib(certify_design_bound())?;
        *n = c
            .bound
            .numer()
            .to_i64()
            .ok_or((D4vStatus::OutOfRange, "numerator".into()))?;
        *d = c
            .bound
            .denom()
            .to_i64()
            .ok_or((D4vStatus::OutOfRange, "denominator".into()))?;
        Ok(())
    })
}

/// LP upper bound of the code certificate for a1 = a1_num / a1_den ≥ 0.
///
/// # Safety
/// `num` and `den` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn d4v_lp_code_bound(
    a1_num: i64,
    a1_den: i64,
    num: *mut i64,
    den: *mut i64,
) -> D4vStatus {
    guard(|| {
        let (n, d) = unsafe { (num.as_mut(), den.as_mut()) };
        let (n, d) = n.zip(d).ok_or_else(|| null("num/den"))?;
        if a1_den == 0 {
            return Err((D4vStatus::InvalidArgument, "a1 denominator is zero".into()));
        }
        let c = lib(certify_code_bound(&rat(a1_num, a1_den)))?;
        *n = c
            .bound
            .numer()
            .to_i64()
            .ok_or((D4vStatus::OutOfRange, "numerator".into()))?;
        *d = c
            .bound
            .denom()
            .to_i64()
            .ok_or((D4vStatus::OutOfRange, "denominator".into()))?;
        Ok(())
    })
}

/// Builds τ2(1..=bound) into a new handle.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn d4v_tau2_table_new(
    bound: usize,
    out: *mut *mut D4vTau2Table,
) -> D4vStatus {
    guard(|| {
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        let t = lib(Tau2Table::new(bound))?;
        *out = Box::into_raw(Box::new(D4vTau2Table(t)));
        Ok(())
    })
}

/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn d4v_tau2_table_bound(table: *const D4vTau2Table) -> usize {
    unsafe { table.as_ref() }.map_or(0, |t| t.0.bound())
}

/// τ2(m) as an i64; `D4V_STATUS_OUT_OF_RANGE` if m is outside the table or
/// the value does not fit.
///
/// # Safety
/// `table` must be null or a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn d4v_tau2_get(
    table: *const D4vTau2Table,
    m: usize,
    out: *mut i64,
) -> D4vStatus {
    guard(|| {
        let t = unsafe { table.as_ref() }.ok_or_else(|| null("table"))?;
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        let v = t.0.get(m).ok_or_else(|| {
            (
                D4vStatus::OutOfRange,
                format!("m = {m} outside 1..={}", t.0.bound()),
            )
        })?;
        *out = v.to_i64().ok_or_else(|| {
            (
                D4vStatus::OutOfRange,
                format!("tau2({m}) = {v} exceeds i64"),
            )
        })?;
        Ok(())
    })
}

/// τ2(m) in decimal, or null on error. Free with [`d4v_string_free`].
///
/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn d4v_tau2_get_string(table: *const D4vTau2Table, m: usize) -> *mut c_char {
    let mut result = ptr::null_mut();
    guard(|| {
        let t = unsafe { table.as_ref() }.ok_or_else(|| null("table"))?;
        let v = t.0.get(m).ok_or_else(|| {
            (
                D4vStatus::OutOfRange,
                format!("m = {m} outside 1..={}", t.0.bound()),
            )
        })?;
        result = CString::new(v.to_string()).expect("digits").into_raw();
        Ok(())
    });
    result
}

/// # Safety
/// `table` must be null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn d4v_tau2_table_free(table: *mut D4vTau2Table) {
    if !table.is_null() {
        drop(unsafe { Box::from_raw(table) });
    }
}

/// Runs every acceptance check and returns the JSON report in `*out_json`
/// (free with [`d4v_string_free`]) and whether all checks passed.
///
/// # Safety
/// `out_json` and `out_all_pass` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn d4v_verify_all(
    profile: D4vProfile,
    out_json: *mut *mut c_char,
    out_all_pass: *mut bool,
) -> D4vStatus {
    guard(|| {
        let json = unsafe { out_json.as_mut() }.ok_or_else(|| null("out_json"))?;
        let pass = unsafe { out_all_pass.as_mut() }.ok_or_else(|| null("out_all_pass"))?;
        let report = verify_all(match profile {
            D4vProfile::Quick => Profile::Quick,
            D4vProfile::Full => Profile::Full,
        });
        *pass = report.all_pass();
        *json = CString::new(report.to_json())
            .expect("JSON has no NUL")
            .into_raw();
        Ok(())
    })
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must be null or a string from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn d4v_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Length of a NUL-terminated string returned by this library, for callers
/// without `strlen`.
///
/// # Safety
/// `s` must be null or a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn d4v_string_len(s: *const c_char) -> usize {
    if s.is_null() {
        0
    } else {
        unsafe { CStr::from_ptr(s) }.to_bytes().len()
    }
}
