use std::ffi::{CStr, CString};
use std::ptr;

use psisum_ffi::*;

fn c(re: f64, im: f64) -> PsisumComplex {
    PsisumComplex { re, im }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(psisum_last_error_message()) }.to_string_lossy().into_owned()
}

#[test]
fn scalar_functions() {
    let mut out = c(0.0, 0.0);
    assert_eq!(unsafe { psisum_digamma(c(0.5, 0.0), &mut out) }, PsisumStatus::Ok);
    assert!((out.re + 1.9635100260214235).abs() < 1e-14);
    assert_eq!(last_error(), "");

    assert_eq!(unsafe { psisum_mittag_leffler(1.0, 1.0, c(1.0, 0.0), &mut out) }, PsisumStatus::Ok);
    assert!((out.re - std::f64::consts::E).abs() < 1e-14);

    let num = [c(1.0, 0.0), c(1.0, 0.0), c(1.5, 0.0)];
    let den = [c(2.0, 0.0), c(2.0, 0.0)];
    assert_eq!(unsafe { psisum_pfq(num.as_ptr(), 3, den.as_ptr(), 2, c(0.75, 0.0), 1e-16, &mut out) }, PsisumStatus::Ok);
    assert!((out.re - 16.0 / 3.0 * (4.0f64 / 3.0).ln()).abs() < 1e-12);

    let mut x = 0.0;
    assert_eq!(unsafe { psisum_bessel(PSISUM_BESSEL_K, 0.0, 2.0, &mut x) }, PsisumStatus::Ok);
    assert!((x - 0.1138938727495334).abs() < 1e-13);
    let (mut closed, mut series) = (0.0, 0.0);
    unsafe {
        assert_eq!(psisum_bessel_dnu(PSISUM_BESSEL_J, 1.5, 2.0, 1, &mut closed), PsisumStatus::Ok);
        assert_eq!(psisum_bessel_dnu(PSISUM_BESSEL_J, 1.5, 2.0, 0, &mut series), PsisumStatus::Ok);
    }
    assert!((closed - series).abs() < 1e-5);

    assert_eq!(unsafe { psisum_ml_deriv_int_alpha(PSISUM_TARGET_BETA, 1, 1.0, c(1.0, 0.0), &mut out) }, PsisumStatus::Ok);
    assert!((out.re + 0.596347362323194).abs() < 1e-12);
    assert_eq!(unsafe { psisum_theta_filter(4, 8, &mut out) }, PsisumStatus::Ok);
    assert!((out.re - 1.0).abs() < 1e-13);
}

#[test]
fn errors_map_to_status_codes() {
    let mut out = c(0.0, 0.0);
    assert_eq!(unsafe { psisum_digamma(c(0.0, 0.0), &mut out) }, PsisumStatus::Pole);
    assert!(last_error().contains("pole"));
    assert_eq!(unsafe { psisum_digamma(c(1.0, 0.0), ptr::null_mut()) }, PsisumStatus::NullPointer);
    let mut x = 0.0;
    assert_eq!(unsafe { psisum_bessel(7, 1.0, 1.0, &mut x) }, PsisumStatus::InvalidArgument);
    assert_eq!(unsafe { psisum_bessel_dnu(PSISUM_BESSEL_K, 1.0, 1.0, 1, &mut x) }, PsisumStatus::InvalidArgument);
    assert_eq!(unsafe { psisum_meijer_g(1, 0, ptr::null(), 0, [0.0].as_ptr(), 1, 1.0, &mut x) }, PsisumStatus::UnsupportedShape);
    assert_eq!(unsafe { psisum_theta_filter(0, 1, &mut out) }, PsisumStatus::InvalidArgument);
    assert_eq!(unsafe { psisum_ml_deriv(9, 1.0, 1.0, c(1.0, 0.0), &mut out) }, PsisumStatus::InvalidArgument);
}

#[test]
fn identity_checks() {
    assert_eq!(psisum_identity_count(), 17);
    let first = unsafe { CStr::from_ptr(psisum_identity_name(0)) };
    assert_eq!(first.to_str().unwrap(), "DA_INCBETA");
    assert!(psisum_identity_name(17).is_null());

    let name = CString::new("SUM_B").unwrap();
    let params = CString::new("b=1 z=0.5").unwrap();
    let mut chk = PsisumCheck {
        lhs: c(0.0, 0.0),
        rhs: c(0.0, 0.0),
        abs_err: 0.0,
        rel_err: 0.0,
        tol: 0.0,
        pass: 0,
        lhs_terms: 0,
        rhs_terms: 0,
    };
    assert_eq!(unsafe { psisum_check_identity(name.as_ptr(), params.as_ptr(), 1e-8, &mut chk) }, PsisumStatus::Ok);
    assert_eq!(chk.pass, 1);
    assert!((chk.lhs.re - 0.8090786962183577).abs() < 1e-13);
    assert!(chk.lhs_terms > 0);

    let bad = CString::new("b=1").unwrap();
    assert_eq!(unsafe { psisum_check_identity(name.as_ptr(), bad.as_ptr(), 1e-8, &mut chk) }, PsisumStatus::InvalidArgument);
    let far = CString::new("b=1 z=2").unwrap();
    assert_eq!(unsafe { psisum_check_identity(name.as_ptr(), far.as_ptr(), 1e-8, &mut chk) }, PsisumStatus::Domain);
    let unknown = CString::new("NOPE").unwrap();
    assert_eq!(unsafe { psisum_check_identity(unknown.as_ptr(), params.as_ptr(), 1e-8, &mut chk) }, PsisumStatus::InvalidArgument);
}

#[test]
fn report_handles() {
    let suite = CString::new("bessel").unwrap();
    let grid = CString::new("b=1 z=0.25\n").unwrap();
    let mut report: *mut PsisumReport = ptr::null_mut();
    assert_eq!(unsafe { psisum_report_run(suite.as_ptr(), 0.0, grid.as_ptr(), 2, &mut report) }, PsisumStatus::Ok);
    assert_eq!(unsafe { psisum_report_count(report) }, 4);
    let (mut pass, mut fail, mut error) = (0, 0, 0);
    assert_eq!(unsafe { psisum_report_summary(report, &mut pass, &mut fail, &mut error) }, PsisumStatus::Ok);
    assert_eq!((pass, fail, error), (4, 0, 0));

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { psisum_report_to_json(report, 1, &mut json) }, PsisumStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    unsafe { psisum_string_free(json) };
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert!(v.get("started_at").is_none());

    let mut csv = ptr::null_mut();
    assert_eq!(unsafe { psisum_report_to_csv(report, &mut csv) }, PsisumStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(csv) }.to_str().unwrap().lines().count(), 5);
    unsafe {
        psisum_string_free(csv);
        psisum_report_free(report);
        psisum_report_free(ptr::null_mut());
        psisum_string_free(ptr::null_mut());
    }

    let bad_suite = CString::new("gamma").unwrap();
    assert_eq!(unsafe { psisum_report_run(bad_suite.as_ptr(), 0.0, ptr::null(), 1, &mut report) }, PsisumStatus::InvalidArgument);
    assert!(last_error().contains("unknown suite"));
    let bad_grid = CString::new("b=\n").unwrap();
    assert_eq!(unsafe { psisum_report_run(suite.as_ptr(), 0.0, bad_grid.as_ptr(), 1, &mut report) }, PsisumStatus::InvalidArgument);
    assert_eq!(unsafe { psisum_report_count(ptr::null()) }, 0);
}
