use std::ffi::CStr;
use std::ptr;

use d4verify_ffi::*;

fn last_error() -> String {
    let p = d4v_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn shell_handle() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(d4v_shell_new(3, &mut s), D4vStatus::Ok);
        assert_eq!(d4v_shell_len(s), 96);
        let mut p = [0i64; 4];
        assert_eq!(d4v_shell_point(s, 0, p.as_mut_ptr()), D4vStatus::Ok);
        assert_eq!(p, [-2, -1, -1, 0]);
        assert_eq!(
            d4v_shell_point(s, 96, p.as_mut_ptr()),
            D4vStatus::OutOfRange
        );
        assert!(last_error().contains("96"));
        d4v_shell_free(s);
        d4v_shell_free(ptr::null_mut());
        assert_eq!(d4v_shell_len(ptr::null()), 0);
    }
}

#[test]
fn errors_are_codes() {
    unsafe {
        let mut n = 0u64;
        assert_eq!(d4v_jacobi_count(0, &mut n), D4vStatus::InvalidArgument);
        assert!(last_error().contains("m must be"));
        assert_eq!(d4v_jacobi_count(1, ptr::null_mut()), D4vStatus::NullPointer);
        assert_eq!(d4v_jacobi_count(25, &mut n), D4vStatus::Ok);
        assert_eq!(n, 24 * 31);
        let mut mask = 0u64;
        assert_eq!(
            d4v_harmonic_strength_mask(1, 40, &mut mask),
            D4vStatus::CapExceeded
        );
        let (mut a, mut b) = (0i64, 0i64);
        assert_eq!(
            d4v_lp_code_bound(-1, 2, &mut a, &mut b),
            D4vStatus::InvalidArgument
        );
        assert_eq!(
            d4v_lp_code_bound(1, 0, &mut a, &mut b),
            D4vStatus::InvalidArgument
        );
    }
}

#[test]
fn strength_orbits_bounds() {
    unsafe {
        let mut mask = 0u64;
        assert_eq!(d4v_harmonic_strength_mask(1, 12, &mut mask), D4vStatus::Ok);
        let odd: u64 = [1, 3, 5, 7, 9, 11].iter().map(|l| 1u64 << l).sum();
        assert_eq!(mask, odd | 1 << 2 | 1 << 4 | 1 << 10);
        let mut n = 0u64;
        assert_eq!(d4v_orbit_count(3, &mut n), D4vStatus::Ok);
        assert_eq!(n, 4);
        let (mut a, mut b) = (0i64, 0i64);
        assert_eq!(d4v_lp_design_bound(&mut a, &mut b), D4vStatus::Ok);
        assert_eq!((a, b), (12, 1));
        assert_eq!(d4v_lp_code_bound(7, 3, &mut a, &mut b), D4vStatus::Ok);
        assert_eq!((a, b), (12, 1));
    }
}

#[test]
fn tau2_table() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(d4v_tau2_table_new(10, &mut t), D4vStatus::Ok);
        assert_eq!(d4v_tau2_table_bound(t), 10);
        let mut v = 0i64;
        for (m, want) in [(1, 1), (2, -8), (3, 12), (4, 64), (5, -210)] {
            assert_eq!(d4v_tau2_get(t, m, &mut v), D4vStatus::Ok);
            assert_eq!(v, want);
        }
        assert_eq!(d4v_tau2_get(t, 0, &mut v), D4vStatus::OutOfRange);
        assert_eq!(d4v_tau2_get(t, 11, &mut v), D4vStatus::OutOfRange);
        let s = d4v_tau2_get_string(t, 5);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "-210");
        assert_eq!(d4v_string_len(s), 4);
        d4v_string_free(s);
        assert!(d4v_tau2_get_string(t, 99).is_null());
        d4v_tau2_table_free(t);
    }
}

#[test]
fn verify_all_quick() {
    unsafe {
        let mut json = ptr::null_mut();
        let mut pass = false;
        assert_eq!(
            d4v_verify_all(D4vProfile::Quick, &mut json, &mut pass),
            D4vStatus::Ok
        );
        assert!(pass);
        let text = CStr::from_ptr(json).to_str().unwrap();
        assert!(text.contains("\"command\": \"verify-all\""));
        d4v_string_free(json);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(d4v_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
