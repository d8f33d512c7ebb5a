use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use cellred_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    cellred_string_free(s);
    out
}

fn last_error() -> String {
    unsafe { take(cellred_last_error_message()) }
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(cellred_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn audit_handle_round_trip() {
    unsafe {
        let mut audit = ptr::null_mut();
        assert_eq!(cellred_audit_new(c("B2").as_ptr(), &mut audit), CellredStatus::Ok);
        assert_eq!(cellred_audit_check_count(audit), 15);
        assert_eq!(cellred_audit_failure_count(audit), 0);
        let mut json = ptr::null_mut();
        assert_eq!(cellred_audit_to_json(audit, &mut json), CellredStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["type"], "B2");
        cellred_audit_free(audit);
    }
}

#[test]
fn unknown_type_sets_status_and_message() {
    unsafe {
        let mut audit = ptr::null_mut();
        assert_eq!(cellred_audit_new(c("E8").as_ptr(), &mut audit), CellredStatus::UnsupportedType);
        assert!(audit.is_null());
        assert!(last_error().contains("E8"));
    }
}

#[test]
fn null_arguments_are_rejected() {
    unsafe {
        let mut audit = ptr::null_mut();
        assert_eq!(cellred_audit_new(ptr::null(), &mut audit), CellredStatus::NullArgument);
        assert_eq!(cellred_audit_new(c("A1").as_ptr(), ptr::null_mut()), CellredStatus::NullArgument);
        assert_eq!(cellred_audit_to_json(ptr::null(), ptr::null_mut()), CellredStatus::NullArgument);
        assert_eq!(cellred_audit_check_count(ptr::null()), 0);
        assert_eq!(cellred_kl_group_order(ptr::null()), 0);
        cellred_audit_free(ptr::null_mut());
        cellred_kl_free(ptr::null_mut());
        cellred_string_free(ptr::null_mut());
    }
}

#[test]
fn invalid_utf8_is_reported() {
    unsafe {
        let bytes = [0xffu8, 0];
        let mut kl = ptr::null_mut();
        assert_eq!(cellred_kl_new(bytes.as_ptr().cast(), &mut kl), CellredStatus::InvalidUtf8);
    }
}

#[test]
fn kl_polynomials_through_the_buffer_protocol() {
    unsafe {
        let mut kl = ptr::null_mut();
        assert_eq!(cellred_kl_new(c("A3").as_ptr(), &mut kl), CellredStatus::Ok);
        assert_eq!(cellred_kl_group_order(kl), 24);

        let (mut y, mut w) = (0usize, 0usize);
        assert_eq!(cellred_kl_parse_word(kl, c("2").as_ptr(), &mut y), CellredStatus::Ok);
        assert_eq!(cellred_kl_parse_word(kl, c("2132").as_ptr(), &mut w), CellredStatus::Ok);

        let mut len = 0usize;
        assert_eq!(cellred_kl_poly(kl, y, w, ptr::null_mut(), 0, &mut len), CellredStatus::Ok);
        assert_eq!(len, 2);
        let mut buf = [0i64; 1];
        assert_eq!(cellred_kl_poly(kl, y, w, buf.as_mut_ptr(), 1, &mut len), CellredStatus::OutOfRange);
        let mut buf = [0i64; 4];
        assert_eq!(cellred_kl_poly(kl, y, w, buf.as_mut_ptr(), 4, &mut len), CellredStatus::Ok);
        assert_eq!(&buf[..len], &[1, 1]);

        let mut a = 99usize;
        assert_eq!(cellred_kl_a_value(kl, 0, &mut a), CellredStatus::Ok);
        assert_eq!(a, 0);
        assert_eq!(cellred_kl_a_value(kl, 23, &mut a), CellredStatus::Ok);
        assert_eq!(a, 6);
        assert_eq!(cellred_kl_a_value(kl, 24, &mut a), CellredStatus::OutOfRange);

        let mut idx = 0usize;
        assert_eq!(cellred_kl_parse_word(kl, c("17").as_ptr(), &mut idx), CellredStatus::InvalidInput);
        cellred_kl_free(kl);
    }
}

#[test]
fn weyl_dimensions() {
    unsafe {
        let mut out = ptr::null_mut();
        let lambda = [1i64, 1];
        assert_eq!(cellred_weyl_dim(c("A2").as_ptr(), lambda.as_ptr(), 2, &mut out), CellredStatus::Ok);
        assert_eq!(take(out), "8");
        let lambda = [0i64, 1];
        assert_eq!(cellred_weyl_dim(c("G2").as_ptr(), lambda.as_ptr(), 2, &mut out), CellredStatus::Ok);
        let d = take(out);
        assert!(d == "7" || d == "14");
        assert_eq!(cellred_weyl_dim(c("A2").as_ptr(), lambda.as_ptr(), 1, &mut out), CellredStatus::InvalidInput);
        let negative = [-1i64, 0];
        assert_eq!(cellred_weyl_dim(c("A2").as_ptr(), negative.as_ptr(), 2, &mut out), CellredStatus::InvalidInput);
    }
}

#[test]
fn sl3_and_table_json() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(cellred_sl3_json(5, true, &mut out), CellredStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["kernels"]["dim_ker_tau"], 15);
        assert_eq!(v["principal_series"]["orbits"][0]["sum"], 186);

        assert_eq!(cellred_table_json(c("B2").as_ptr(), c("cwe").as_ptr(), &mut out), CellredStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["table"], "cwe");

        assert_eq!(cellred_table_json(c("B2").as_ptr(), c("bogus").as_ptr(), &mut out), CellredStatus::InvalidInput);
        assert_eq!(cellred_table_json(c("A4").as_ptr(), c("delta").as_ptr(), &mut out), CellredStatus::InvalidInput);
    }
}

#[test]
fn errors_are_per_thread() {
    unsafe {
        let mut kl = ptr::null_mut();
        assert_ne!(cellred_kl_new(c("X9").as_ptr(), &mut kl), CellredStatus::Ok);
    }
    let other = std::thread::spawn(|| cellred_last_error_message().is_null()).join().unwrap();
    assert!(other);
    assert!(!last_error().is_empty());
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/cellred.h")).unwrap();
    for name in [
        "cellred_audit_new",
        "cellred_kl_poly",
        "cellred_weyl_dim",
        "cellred_sl3_json",
        "cellred_table_json",
        "CELLRED_STATUS_PANIC",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
