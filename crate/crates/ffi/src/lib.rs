//! C ABI for psisum.
//!
//! Every function returns a [`PsisumStatus`] and writes its result through an
//! out-pointer. On failure the message is available from
//! [`psisum_last_error_message`] on the same thread. Reports are opaque
//! handles released with [`psisum_report_free`]; strings handed out by the
//! library are released with [`psisum_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;

use num_complex::Complex64;
use psisum::hyper::{pfq, HypergeometricSpec};
use psisum::identities::{check_identity, IdentityId};
use psisum::meijerg::{meijer_g, MeijerGSpec};
use psisum::paramderiv::{
    bessel_dnu_closed, bessel_dnu_series, ml_deriv_closed_int_alpha, ml_deriv_series, mittag_leffler, p_func, q_func,
    theta_filter, wright, wright_deriv_series, DerivTarget, MLParams, WrightParams,
};
use psisum::specfun::{bessel, digamma, gamma, inc_beta, BesselKind};
use psisum::verify::{parse_grid, run_suite, Report, RunOptions, SuiteName};
use psisum::Error;

/// Outcome of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsisumStatus {
    Ok = 0,
    /// A required pointer was null.
    NullPointer = 1,
    /// An argument was malformed: bad enum value, bad UTF-8, unknown name.
    InvalidArgument = 2,
    /// The point lies outside the function's domain.
    Domain = 3,
    /// The point is a pole.
    Pole = 4,
    /// A series did not converge within its term budget.
    NonConvergence = 5,
    /// Adaptive quadrature hit its subdivision limit.
    Quadrature = 6,
    /// Meijer-G shape outside the supported set.
    UnsupportedShape = 7,
    /// The library panicked; this is a bug.
    Internal = 8,
}

/// A complex number.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsisumComplex {
    pub re: f64,
    pub im: f64,
}

impl From<PsisumComplex> for Complex64 {
    fn from(z: PsisumComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl From<Complex64> for PsisumComplex {
    fn from(z: Complex64) -> Self {
        PsisumComplex { re: z.re, im: z.im }
    }
}

/// Result of checking one identity at one point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsisumCheck {
    pub lhs: PsisumComplex,
    pub rhs: PsisumComplex,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol: f64,
    /// 1 when rel_err <= tol, else 0.
    pub pass: i32,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
}

/// Opaque suite report.
pub struct PsisumReport {
    inner: Report,
}

pub const PSISUM_BESSEL_J: i32 = 0;
pub const PSISUM_BESSEL_Y: i32 = 1;
pub const PSISUM_BESSEL_I: i32 = 2;
pub const PSISUM_BESSEL_K: i32 = 3;

pub const PSISUM_TARGET_ALPHA: i32 = 0;
pub const PSISUM_TARGET_BETA: i32 = 1;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(PsisumStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Pole { .. } => PsisumStatus::Pole,
            Error::Domain { .. } => PsisumStatus::Domain,
            Error::NonConvergence { .. } => PsisumStatus::NonConvergence,
            Error::Quadrature { .. } => PsisumStatus::Quadrature,
            Error::UnsupportedShape { .. } => PsisumStatus::UnsupportedShape,
            Error::InvalidInput(_) => PsisumStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(PsisumStatus::InvalidArgument, msg.into())
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `f`, converting errors and panics into a status and a last-error message.
fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> PsisumStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            PsisumStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal error");
            PsisumStatus::Internal
        }
    }
}

/// Writes `value` through `out`.
///
/// # Safety
/// `out` must be null or valid for writes.
unsafe fn store<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(PsisumStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

/// # Safety
/// `s` must be null or a nul-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(PsisumStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| invalid(format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` must be valid for `n` reads, or `n` must be 0.
unsafe fn read_slice<'a, T>(p: *const T, n: usize, what: &str) -> Result<&'a [T], Failure> {
    if n == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure(PsisumStatus::NullPointer, format!("{what} is null")));
    }
    Ok(std::slice::from_raw_parts(p, n))
}

fn bessel_kind(kind: i32) -> Result<BesselKind, Failure> {
    match kind {
        PSISUM_BESSEL_J => Ok(BesselKind::J),
        PSISUM_BESSEL_Y => Ok(BesselKind::Y),
        PSISUM_BESSEL_I => Ok(BesselKind::I),
        PSISUM_BESSEL_K => Ok(BesselKind::K),
        _ => Err(invalid(format!("unknown Bessel kind {kind}"))),
    }
}

fn target(t: i32) -> Result<DerivTarget, Failure> {
    match t {
        PSISUM_TARGET_ALPHA => Ok(DerivTarget::Alpha),
        PSISUM_TARGET_BETA => Ok(DerivTarget::Beta),
        _ => Err(invalid(format!("unknown derivative target {t}"))),
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("reports contain no nul bytes").into_raw()
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn psisum_version() -> *const c_char {
    static VERSION: OnceLock<CString> = OnceLock::new();
    VERSION.get_or_init(|| CString::new(env!("CARGO_PKG_VERSION")).expect("no nul")).as_ptr()
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn psisum_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Gamma(z).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn psisum_gamma(z: PsisumComplex, out: *mut PsisumComplex) -> PsisumStatus {
    guard(|| store(out, gamma(z.into())?.into()))
}

/// psi(z).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn psisum_digamma(z: PsisumComplex, out: *mut PsisumComplex) -> PsisumStatus {
    guard(|| store(out, digamma(z.into())?.into()))
}

/// B_z(a, b).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn psisum_inc_beta(
    z: PsisumComplex,
    a: PsisumComplex,
    b: PsisumComplex,
    out: *mut PsisumComplex,
) -> PsisumStatus {
    guard(|| store(out, inc_beta(z.into(), a.into(), b.into())?.into()))
}

/// pFq(a; b; z) with `p` numerator and `q` denominator parameters.
///
/// # Safety
/// `a` and `b` must be valid for `p` and `q` reads; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn psisum_pfq(
    a: *const PsisumComplex,
    p: usize,
    b: *const PsisumComplex,
    q: usize,
    z: PsisumComplex,
    tol: f64,
    out: *mut PsisumComplex,
) -> PsisumStatus {
    guard(|| {
        let num: Vec<Complex64> = read_slice(a, p, "a")?.iter().map(|&x| x.into()).collect();
        let den: Vec<Complex64> = read_slice(b, q, "b")?.iter().map(|&x| x.into()).collect();
        let r = pfq(&HypergeometricSpec::new(&num, &den, z.into()), tol)?;
        if !r.converged {
            return Err(Error::NonConvergence { what: "pfq", terms: r.terms_used }.into());
        }
        store(out, r.value.into())
    })
}

/// G^{m,n}_{p,q}(x | a; b) for the supported shapes.
///
/// # Safety
/// `a` and `b` must be valid for `p` and `q` reads; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn psisum_meijer_g(
    m: usize,
    n: usize,
    a: *const f64,
    p: usize,
    b: *const f64,
    q: usize,
    x: f64,
    out: *mut f64,
) -> PsisumStatus {
    guard(|| {
        let spec = MeijerGSpec::new(m, n, read_slice(a, p, "a")?, read_slice(b, q, "b")?, x);
        store(out, meijer_g(&spec, 1e-16)?)
    })
}

/// Bessel function of kind `PSISUM_BESSEL_*`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn psisum_bessel(kind: i32, nu: f64, x: f64, out: *mut f64) -> PsisumStatus {
    guard(|| store(out, bessel(bessel_kind(kind)?, nu, x)?))
}

/// Order derivative of J (`PSISUM_BESSEL_J`) or I (`PSISUM_BESSEL_I`):
/// the Meijer-G closed form when `closed` is nonzero, else the digamma series.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn psisum_bessel_dnu(kind: i32, nu: f64, x: f64, closed: i32, out: *mut f64) -> PsisumStatus {
    guard(|| {
        let k = bessel_kind(kind)?;
        if !matches!(k, BesselKind::J | BesselKind::I) {
            return Err(invalid("order derivatives exist for J and I only"));
        }
        let v = if closed != 0 { bessel_dnu_closed(k, nu, x)? } else { bessel_dnu_series(k, nu, x)? };
        store(out, v)
    })
}

/// W_{alpha,beta}(z).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn psisum_wright(alpha: f64, beta: f64, z: PsisumComplex, out: *mut PsisumComplex) -> PsisumStatus {
    guard(|| store(out, wright(&WrightParams { alpha, beta, z: z.into() })?.into()))
}

/// Derivative of W_{alpha,beta}(z) with respect to `PSISUM_TARGET_*`, by series.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn psisum_wright_deriv(
    which: i32,
    alpha: f64,
    beta: f64,
    z: PsisumComplex,
    out: *mut PsisumComplex,
) -> PsisumStatus {
    guard(|| store(out, wright_deriv_series(target(which)?, &WrightParams { alpha, beta, z: z.into() })?.into()))
}

/// E_{alpha,beta}(z).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn psisum_mittag_leffler(
    alpha: f64,
    beta: f64,
    z: PsisumComplex,
    out: *mut PsisumComplex,
) -> PsisumStatus {
    guard(|| store(out, mittag_leffler(&MLParams { alpha, beta, z: z.into() })?.into()))
}

/// Derivative of E_{alpha,beta}(z) with respect to `PSISUM_TARGET_*`, by series.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn psisum_ml_deriv(
    which: i32,
    alpha: f64,
    beta: f64,
    z: PsisumComplex,
    out: *mut PsisumComplex,
) -> PsisumStatus {
    guard(|| store(out, ml_deriv_series(target(which)?, &MLParams { alpha, beta, z: z.into() })?.into()))
}

/// Closed form of the Mittag-Leffler derivative at integer alpha = n.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn psisum_ml_deriv_int_alpha(
    which: i32,
    n: u32,
    beta: f64,
    z: PsisumComplex,
    out: *mut PsisumComplex,
) -> PsisumStatus {
    guard(|| store(out, ml_deriv_closed_int_alpha(target(which)?, n, beta, z.into())?.into()))
}

/// Q(a, t) = sum t^k psi(k+a)/(a)_k, closed form.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn psisum_q_func(a: PsisumComplex, t: PsisumComplex, out: *mut PsisumComplex) -> PsisumStatus {
    guard(|| store(out, q_func(a.into(), t.into())?.into()))
}

/// P(a, t) = dQ(a, t)/dt, closed form.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn psisum_p_func(a: PsisumComplex, t: PsisumComplex, out: *mut PsisumComplex) -> PsisumStatus {
    guard(|| store(out, p_func(a.into(), t.into())?.into()))
}

/// (1/n) sum_{m=1}^{n} exp(2 pi i m k / n), n >= 1.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn psisum_theta_filter(n: u64, k: u64, out: *mut PsisumComplex) -> PsisumStatus {
    guard(|| {
        if n == 0 {
            return Err(invalid("theta filter needs n >= 1"));
        }
        store(out, theta_filter(n, k).into())
    })
}

/// Number of registered identities.
#[no_mangle]
pub extern "C" fn psisum_identity_count() -> usize {
    IdentityId::ALL.len()
}

/// Name of identity `index`, a static string, or null when out of range.
#[no_mangle]
pub extern "C" fn psisum_identity_name(index: usize) -> *const c_char {
    static NAMES: OnceLock<Vec<CString>> = OnceLock::new();
    let names = NAMES.get_or_init(|| IdentityId::ALL.iter().map(|id| CString::new(id.name()).expect("no nul")).collect());
    names.get(index).map_or(std::ptr::null(), |c| c.as_ptr())
}

/// Checks identity `name` at `params`, written as in a grid file: `b=1.4 c=2.6 z=0.3+0.1i`.
///
/// An evaluation error returns its status and leaves `out` untouched.
///
/// # Safety
/// `name` and `params` must be nul-terminated strings; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn psisum_check_identity(
    name: *const c_char,
    params: *const c_char,
    tol: f64,
    out: *mut PsisumCheck,
) -> PsisumStatus {
    guard(|| {
        let name = read_str(name, "name")?;
        let id = IdentityId::from_name(name).ok_or_else(|| invalid(format!("unknown identity `{name}`")))?;
        let line = format!("identity={name} {}", read_str(params, "params")?);
        let grid = parse_grid(&line).map_err(|e| invalid(e.to_string()))?;
        let point = &grid.first().ok_or_else(|| invalid("no parameters"))?.point;
        let c = check_identity(id, point, tol);
        if let Some(e) = c.error {
            return Err(Failure(PsisumStatus::Domain, e));
        }
        store(
            out,
            PsisumCheck {
                lhs: c.lhs.into(),
                rhs: c.rhs.into(),
                abs_err: c.abs_err,
                rel_err: c.rel_err,
                tol: c.tol,
                pass: c.pass as i32,
                lhs_terms: c.lhs_terms,
                rhs_terms: c.rhs_terms,
            },
        )
    })
}

/// Runs suite `suite` (`beta`, `hyper`, `bessel`, `wright`, `mittag-leffler` or `all`).
///
/// `tol_override` replaces every tolerance when positive. `grid` is null for
/// the default grids, or the text of a grid file. `jobs` is the worker count.
///
/// # Safety
/// `suite` must be a nul-terminated string; `grid` null or nul-terminated;
/// `out` valid for writes. Release the report with [`psisum_report_free`].
#[no_mangle]
pub unsafe extern "C" fn psisum_report_run(
    suite: *const c_char,
    tol_override: f64,
    grid: *const c_char,
    jobs: usize,
    out: *mut *mut PsisumReport,
) -> PsisumStatus {
    guard(|| {
        let suite: SuiteName = read_str(suite, "suite")?.parse().map_err(invalid)?;
        let grid = if grid.is_null() {
            None
        } else {
            Some(parse_grid(read_str(grid, "grid")?).map_err(|e| invalid(e.to_string()))?)
        };
        let opts = RunOptions { tol_override: (tol_override > 0.0).then_some(tol_override), grid, jobs };
        let report = run_suite(suite, &opts).map_err(|e| invalid(e.to_string()))?;
        if out.is_null() {
            return Err(Failure(PsisumStatus::NullPointer, "output pointer is null".into()));
        }
        store(out, Box::into_raw(Box::new(PsisumReport { inner: report })))
    })
}

/// Number of rows in a report; 0 for null.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn psisum_report_count(report: *const PsisumReport) -> usize {
    report.as_ref().map_or(0, |r| r.inner.rows.len())
}

/// Row tallies of a report. Any of the out-pointers may be null.
///
/// # Safety
/// `report` must be a live handle; non-null out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn psisum_report_summary(
    report: *const PsisumReport,
    pass: *mut usize,
    fail: *mut usize,
    error: *mut usize,
) -> PsisumStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| Failure(PsisumStatus::NullPointer, "report is null".into()))?;
        let s = r.inner.summary;
        for (p, v) in [(pass, s.pass), (fail, s.fail), (error, s.error)] {
            if !p.is_null() {
                p.write(v);
            }
        }
        Ok(())
    })
}

/// The report as JSON. With `canonical` nonzero the timestamp and runtimes are
/// omitted, so equal inputs give equal strings. Release with [`psisum_string_free`].
///
/// # Safety
/// `report` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn psisum_report_to_json(
    report: *const PsisumReport,
    canonical: i32,
    out: *mut *mut c_char,
) -> PsisumStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| Failure(PsisumStatus::NullPointer, "report is null".into()))?;
        if out.is_null() {
            return Err(Failure(PsisumStatus::NullPointer, "output pointer is null".into()));
        }
        let s = if canonical != 0 { r.inner.canonical_json() } else { r.inner.to_json() };
        store(out, into_c_string(s))
    })
}

/// The report as CSV. Release with [`psisum_string_free`].
///
/// # Safety
/// `report` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn psisum_report_to_csv(report: *const PsisumReport, out: *mut *mut c_char) -> PsisumStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| Failure(PsisumStatus::NullPointer, "report is null".into()))?;
        if out.is_null() {
            return Err(Failure(PsisumStatus::NullPointer, "output pointer is null".into()));
        }
        store(out, into_c_string(r.inner.to_csv()))
    })
}

/// Releases a report. Null is ignored.
///
/// # Safety
/// `report` must be null or a handle from [`psisum_report_run`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn psisum_report_free(report: *mut PsisumReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn psisum_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
