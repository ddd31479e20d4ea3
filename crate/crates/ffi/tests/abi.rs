use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use fanokit_ffi::*;

fn last_error() -> String {
    let p = fk_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn bott_on_gr28() {
    let sub = [-1i64, -1];
    let mut out = FkBottResult::default();
    let status = unsafe { fk_bott(2, 8, ptr::null(), sub.as_ptr(), &mut out) };
    assert_eq!(status, FkStatus::Ok);
    assert_eq!((out.vanishing, out.degree, out.dim), (0, 0, 28));
    assert!(fk_last_error().is_null());
}

#[test]
fn bott_errors_set_status_and_message() {
    let sub = [0i64, 1];
    let mut out = FkBottResult::default();
    let status = unsafe { fk_bott(2, 8, ptr::null(), sub.as_ptr(), &mut out) };
    assert_eq!(status, FkStatus::InvalidWeight);
    assert!(last_error().contains("non-increasing"));
    let status = unsafe { fk_bott(8, 8, ptr::null(), sub.as_ptr(), &mut out) };
    assert_eq!(status, FkStatus::InvalidArgument);
    let status = unsafe { fk_bott(2, 8, ptr::null(), ptr::null(), &mut out) };
    assert_eq!(status, FkStatus::NullPointer);
}

#[test]
fn hypersurface_numbers() {
    let mut h = 0u64;
    assert_eq!(unsafe { fk_hypersurface_hodge(7, 4, 3, 3, &mut h) }, FkStatus::Ok);
    assert_eq!(h, 1108);
    assert_eq!(unsafe { fk_hypersurface_hodge(5, 3, 3, 1, &mut h) }, FkStatus::Ok);
    assert_eq!(h, 1);
    assert_eq!(unsafe { fk_hypersurface_hodge(5, 3, 3, 3, &mut h) }, FkStatus::InvalidArgument);
}

#[test]
fn alpha4_handle_round_trip() {
    let mut form = ptr::null_mut();
    assert_eq!(unsafe { fk_alt_form_alpha4(&mut form) }, FkStatus::Ok);
    assert_eq!(unsafe { fk_alt_form_degree(form) }, 4);
    let mut orbit = FkOrbit::default();
    assert_eq!(unsafe { fk_alt_form_classify(form, &mut orbit) }, FkStatus::Ok);
    let name = unsafe { CStr::from_ptr(orbit.name.as_ptr()) }.to_str().unwrap();
    assert_eq!((name, orbit.orbit_dim, orbit.two_rank, orbit.q_rank), ("O7", 34, 18, 4));

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { fk_alt_form_to_json(form, &mut json) }, FkStatus::Ok);
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { fk_alt_form_from_json(json, 7, &mut again) }, FkStatus::Ok);
    let mut orbit2 = FkOrbit::default();
    assert_eq!(unsafe { fk_alt_form_classify(again, &mut orbit2) }, FkStatus::Ok);
    assert_eq!(orbit2.orbit_dim, 34);
    unsafe {
        fk_string_free(json);
        fk_alt_form_free(form);
        fk_alt_form_free(again);
        fk_alt_form_free(ptr::null_mut());
    }
}

#[test]
fn malformed_json_is_reported() {
    let text = CString::new("[{\"indices\":[1,1,2],\"coeff\":1}]").unwrap();
    let mut form = ptr::null_mut();
    let status = unsafe { fk_alt_form_from_json(text.as_ptr(), 7, &mut form) };
    assert_ne!(status, FkStatus::Ok);
    assert!(form.is_null());
    assert!(!last_error().is_empty());
    let garbage = CString::new("not json").unwrap();
    assert_eq!(unsafe { fk_alt_form_from_json(garbage.as_ptr(), 7, &mut form) }, FkStatus::Json);
    assert_eq!(unsafe { fk_alt_form_classify(ptr::null(), &mut FkOrbit::default()) }, FkStatus::NullPointer);
}

#[test]
fn pfaffian_and_rank() {
    let p = 10007u64;
    // standard symplectic form on F_p^4 with a 2 in the second block
    let neg = |v: u64| p - v;
    let m = [0, 1, 0, 0, neg(1), 0, 0, 0, 0, 0, 0, 2, 0, 0, neg(2), 0];
    let mut pf = 0u64;
    assert_eq!(unsafe { fk_pfaffian(p, 4, m.as_ptr(), &mut pf) }, FkStatus::Ok);
    assert_eq!(pf, 2);
    let mut r = 0usize;
    assert_eq!(unsafe { fk_skew_rank(p, 4, m.as_ptr(), &mut r) }, FkStatus::Ok);
    assert_eq!(r, 4);
    let not_skew = [0u64, 1, 1, 0];
    assert_ne!(unsafe { fk_skew_rank(p, 2, not_skew.as_ptr(), &mut r) }, FkStatus::Ok);
    assert_eq!(unsafe { fk_pfaffian(10, 4, m.as_ptr(), &mut pf) }, FkStatus::InvalidArgument);
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(fk_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/fanokit.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for symbol in ["fk_bott", "fk_alt_form_classify", "fk_pfaffian", "FK_STATUS_NULL_POINTER", "typedef struct FkAltForm FkAltForm"] {
        assert!(text.contains(symbol), "header lacks {symbol}");
    }
    let Ok(status) = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c"])
        .arg(&header)
        .status()
    else {
        eprintln!("no C compiler found, skipping the compile check");
        return;
    };
    assert!(status.success());
}
