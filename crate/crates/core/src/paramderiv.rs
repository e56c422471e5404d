//! Derivatives with respect to parameters: Bessel order derivatives, the
//! Wright function W_{a,b}(z) = sum z^k / (k! Gamma(a k + b)) and the
//! Mittag-Leffler function E_{a,b}(z) = sum z^k / Gamma(a k + b).
//!
//! Each derivative has a brute-force series and at least one closed form
//! built from Bessel, hypergeometric and Meijer-G pieces. The series are the
//! oracles the closed forms are tested against.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::hyper::{pfq, HypergeometricSpec};
use crate::meijerg::{meijer_g, MeijerGSpec};
use crate::series::{extrapolate_eps_levels, integrate, sum_series_from};
use crate::specfun::{
    bessel, digamma, exp_integral, inc_gamma_lower_scaled, is_nonpositive_integer, psi_over_gamma, rgamma,
    tail_cutoff, BesselKind, ExpIntKind, EULER_GAMMA,
};
use crate::{re, Complex};

const SERIES_TOL: f64 = 1e-17;
const SERIES_MAX_TERMS: usize = 20_000;
const CLOSED_TOL: f64 = 1e-15;
/// Above this argument the digamma-weighted J series cancels too much and
/// the differentiated integral representation takes over.
const J_SERIES_MAX_X: f64 = 8.0;

/// Which parameter a derivative is taken with respect to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DerivTarget {
    Alpha,
    Beta,
}

/// Wright function parameters, alpha > -1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WrightParams {
    pub alpha: f64,
    pub beta: f64,
    pub z: Complex,
}

/// Mittag-Leffler parameters, alpha > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    pub alpha: f64,
    pub beta: f64,
    pub z: Complex,
}

fn check_series(r: crate::series::SeriesResult, what: &'static str) -> Result<Complex> {
    if !r.converged {
        return Err(Error::NonConvergence { what, terms: r.terms_used });
    }
    Ok(r.value)
}

fn real_pfq(num: &[f64], den: &[f64], x: f64) -> Result<f64> {
    let num: Vec<Complex> = num.iter().map(|&a| re(a)).collect();
    let den: Vec<Complex> = den.iter().map(|&b| re(b)).collect();
    Ok(pfq(&HypergeometricSpec::new(&num, &den, re(x)), CLOSED_TOL)?.value.re)
}

fn only_j_or_i(kind: BesselKind, func: &'static str) -> Result<f64> {
    match kind {
        BesselKind::J => Ok(-1.0),
        BesselKind::I => Ok(1.0),
        _ => domain(func, "order derivative is provided for J and I only"),
    }
}

fn check_bessel_range(func: &'static str, nu: f64, x: f64) -> Result<()> {
    if !(x > 0.0 && x <= 30.0) {
        return domain(func, format!("x = {x} outside (0, 30]"));
    }
    if !(nu.abs() <= 10.0) {
        return domain(func, format!("order {nu} outside [-10, 10]"));
    }
    Ok(())
}

/// dJ_nu/dnu or dI_nu/dnu from the digamma-weighted series
///
/// ```text
/// dJ_nu/dnu = sum_k (-1)^k (x/2)^(nu+2k) / k! [ln(x/2) / Gamma(nu+k+1) - psi(nu+k+1) / Gamma(nu+k+1)]
/// ```
///
/// and the same without (-1)^k for I. For J with x > 8 the alternating
/// series loses too many digits, so the integral representation of J is
/// differentiated under the integral sign instead.
pub fn bessel_dnu_series(kind: BesselKind, nu: f64, x: f64) -> Result<f64> {
    let sign = only_j_or_i(kind, "bessel_dnu_series")?;
    check_bessel_range("bessel_dnu_series", nu, x)?;
    if sign < 0.0 && x > J_SERIES_MAX_X {
        return dj_dnu_integral(nu, x);
    }
    let h = 0.5 * x;
    let lh = h.ln();
    let q = sign * h * h;
    let mut p = h.powf(nu);
    let r = sum_series_from(
        |k| {
            let a = re(nu + k as f64 + 1.0);
            let t = p * (rgamma(a) * lh - psi_over_gamma(a));
            p *= q / (k as f64 + 1.0);
            t
        },
        SERIES_TOL,
        SERIES_MAX_TERMS,
        (-nu).max(0.0).ceil() as usize + 2,
    );
    Ok(check_series(r, "bessel_dnu_series")?.re)
}

/// Order derivative of the Schlafli integral for J_nu.
fn dj_dnu_integral(nu: f64, x: f64) -> Result<f64> {
    let tol = 1e-13;
    let finite = integrate(|t| re(-t * (nu * t - x * t.sin()).sin()), 0.0, PI, tol)?.value.re / PI;
    let cut = tail_cutoff(|t| -x * t.sinh() - nu * t);
    let e0 = integrate(|t| re((-x * t.sinh() - nu * t).exp()), 0.0, cut, tol)?.value.re;
    let e1 = integrate(|t| re(t * (-x * t.sinh() - nu * t).exp()), 0.0, cut, tol)?.value.re;
    Ok(finite - crate::specfun::cos_pi(nu) * e0 + crate::specfun::sin_pi(nu) * e1 / PI)
}

/// Closed form of the order derivative of J_nu or I_nu:
///
/// ```text
/// dJ/dnu = (pi/2) [Y_nu (x/2)^(2nu) / Gamma(nu+1)^2 2F3(nu, nu+1/2; 2nu+1, nu+1, nu+1; -x^2)
///                  - nu J_nu / sqrt(pi) G^{3,0}_{2,4}(x^2 | 1/2, 1; 0, 0, nu, -nu)]
/// dI/dnu = -nu I_nu / (2 sqrt(pi)) G^{3,1}_{2,4}(x^2 | 1/2, 1; 0, 0, nu, -nu)
///          - K_nu (x/2)^(2nu) / Gamma(nu+1)^2 2F3(nu, nu+1/2; 2nu+1, nu+1, nu+1; x^2)
/// ```
///
/// valid for nu > -1 and x^2 <= 200. Negative integer orders follow from the
/// reflection formulas; nu = -1/2, where 2nu+1 vanishes, is reached by
/// extrapolation in nu.
pub fn bessel_dnu_closed(kind: BesselKind, nu: f64, x: f64) -> Result<f64> {
    let sign = only_j_or_i(kind, "bessel_dnu_closed")?;
    check_bessel_range("bessel_dnu_closed", nu, x)?;
    if x * x > 200.0 {
        return domain("bessel_dnu_closed", "x^2 > 200 is outside the Meijer-G evaluator");
    }
    if nu < 0.0 && nu.fract() == 0.0 {
        let n = -nu;
        let parity = if (n as i64) % 2 == 0 { 1.0 } else { -1.0 };
        let d = bessel_dnu_closed(kind, n, x)?;
        return Ok(if sign < 0.0 {
            parity * (PI * bessel(BesselKind::Y, n, x)? - d)
        } else {
            -2.0 * parity * bessel(BesselKind::K, n, x)? - d
        });
    }
    if nu <= -1.0 {
        return domain("bessel_dnu_closed", "closed form needs nu > -1 or a negative integer order");
    }
    if (nu + 0.5).abs() < 1e-3 {
        return Ok(extrapolate_eps_levels(|e| dnu_closed_raw(sign, nu + e, x).map(re), 1e-2, 4)?.re);
    }
    dnu_closed_raw(sign, nu, x)
}

fn dnu_closed_raw(sign: f64, nu: f64, x: f64) -> Result<f64> {
    let x2 = x * x;
    let lead = (0.5 * x).powf(2.0 * nu) * rgamma(re(nu + 1.0)).re.powi(2);
    let f = real_pfq(&[nu, nu + 0.5], &[2.0 * nu + 1.0, nu + 1.0, nu + 1.0], sign * x2)?;
    let g = |n: usize| -> Result<f64> {
        if nu == 0.0 {
            // The Meijer-G term carries a factor nu.
            return Ok(0.0);
        }
        meijer_g(&MeijerGSpec::new(3, n, &[0.5, 1.0], &[0.0, 0.0, nu, -nu], x2), CLOSED_TOL)
    };
    if sign < 0.0 {
        let y = bessel(BesselKind::Y, nu, x)?;
        let j = bessel(BesselKind::J, nu, x)?;
        Ok(0.5 * PI * (y * lead * f - nu * j / PI.sqrt() * g(0)?))
    } else {
        let i = bessel(BesselKind::I, nu, x)?;
        let k = bessel(BesselKind::K, nu, x)?;
        Ok(-nu * i / (2.0 * PI.sqrt()) * g(1)? - k * lead * f)
    }
}

fn check_wright(p: &WrightParams) -> Result<()> {
    if !(p.alpha > -1.0) {
        return domain("wright", format!("alpha = {} must exceed -1", p.alpha));
    }
    Ok(())
}

/// Terms past the last nonpositive argument of Gamma(a k + b), so early zeros never stop a sum.
fn pole_guard(alpha: f64, beta: f64) -> usize {
    if alpha > 0.0 && beta < 0.0 {
        (-beta / alpha).ceil() as usize + 3
    } else {
        3
    }
}

/// The first k with a k + b a nonpositive integer, where the digamma has a pole.
fn digamma_pole(alpha: f64, beta: f64, guard: usize) -> Option<usize> {
    (0..guard).find(|&k| is_nonpositive_integer(re(alpha * k as f64 + beta)).is_some())
}

/// W_{alpha,beta}(z) = sum z^k / (k! Gamma(alpha k + beta)).
pub fn wright(p: &WrightParams) -> Result<Complex> {
    check_wright(p)?;
    let mut zk = re(1.0);
    let r = sum_series_from(
        |k| {
            let t = zk * rgamma(re(p.alpha * k as f64 + p.beta));
            zk *= p.z / (k as f64 + 1.0);
            t
        },
        SERIES_TOL,
        SERIES_MAX_TERMS,
        pole_guard(p.alpha, p.beta),
    );
    check_series(r, "wright")
}

/// dW/dalpha = -sum k z^k psi(alpha k + beta) / (k! Gamma(alpha k + beta)), or the
/// beta-derivative without the factor k.
pub fn wright_deriv_series(target: DerivTarget, p: &WrightParams) -> Result<Complex> {
    check_wright(p)?;
    let guard = pole_guard(p.alpha, p.beta);
    if let Some(k) = digamma_pole(p.alpha, p.beta, guard) {
        if !(target == DerivTarget::Alpha && k == 0) {
            return domain("wright_deriv_series", format!("digamma pole at term k = {k}"));
        }
    }
    let mut zk = re(1.0);
    let r = sum_series_from(
        |k| {
            let a = re(p.alpha * k as f64 + p.beta);
            let w = if target == DerivTarget::Alpha { k as f64 } else { 1.0 };
            let t = if w == 0.0 { re(0.0) } else { -zk * psi_over_gamma(a) * w };
            zk *= p.z / (k as f64 + 1.0);
            t
        },
        SERIES_TOL,
        SERIES_MAX_TERMS,
        guard,
    );
    check_series(r, "wright_deriv_series")
}

/// Closed forms of dW/dbeta and dW/dalpha at alpha = 1, for beta >= 1 and real z > 0:
///
/// ```text
/// dW/dbeta = z^(-(1+b)/2) { I_(b-1)(2 sqrt z) [(1-b)/(8 sqrt pi) G1 - (z/2) ln z]
///                           - z^b / Gamma(b)^2 K_(b-1)(2 sqrt z) 2F3(b-1, b-1/2; b, b, 2b-1; 4z) }
/// ```
///
/// with G1 = G^{3,1}_{2,4}(4z | 3/2, 2; 1, 1, b, 2-b). The alpha-derivative
/// follows from dW/dalpha = z d/dz dW/dbeta and additionally uses
/// G^{2,1}_{1,3}(4z | 3/2; 1, b, 2-b) and 1F2(b-1/2; b, 2b-1; 4z).
pub fn wright_deriv_closed_alpha1(target: DerivTarget, beta: f64, z: f64) -> Result<f64> {
    if !(beta >= 1.0 && beta <= 10.0) {
        return domain("wright_deriv_closed_alpha1", format!("beta = {beta} outside [1, 10]"));
    }
    if !(z > 0.0 && z <= 50.0) {
        return domain("wright_deriv_closed_alpha1", format!("z = {z} outside (0, 50]"));
    }
    let b = beta;
    let s = 2.0 * z.sqrt();
    let lz = z.ln();
    let spi = PI.sqrt();
    let i = |nu: f64| bessel(BesselKind::I, nu, s);
    let k = |nu: f64| bessel(BesselKind::K, nu, s);
    // Every Meijer-G and 1F2 term carries a factor (b - 1).
    let unit = b == 1.0;
    let g1 = if unit { 0.0 } else { meijer_g(&MeijerGSpec::new(3, 1, &[1.5, 2.0], &[1.0, 1.0, b, 2.0 - b], 4.0 * z), CLOSED_TOL)? };
    let f23 = real_pfq(&[b - 1.0, b - 0.5], &[b, b, 2.0 * b - 1.0], 4.0 * z)?;
    let zb = z.powf(b) * rgamma(re(b)).re.powi(2);
    let (i1, k1) = (i(b - 1.0)?, k(b - 1.0)?);
    match target {
        DerivTarget::Beta => {
            Ok(z.powf(-0.5 * (1.0 + b)) * (i1 * ((1.0 - b) / (8.0 * spi) * g1 - 0.5 * z * lz) - zb * k1 * f23))
        }
        DerivTarget::Alpha => {
            let (g2, f12) = if unit {
                (0.0, 0.0)
            } else {
                (
                    meijer_g(&MeijerGSpec::new(2, 1, &[1.5], &[1.0, b, 2.0 - b], 4.0 * z), CLOSED_TOL)?,
                    real_pfq(&[b - 0.5], &[b, 2.0 * b - 1.0], 4.0 * z)?,
                )
            };
            let isum = i(b - 2.0)? + i(b)?;
            let ksum = k(b - 2.0)? + k(b)?;
            let rz = z.sqrt();
            let body = (b - 1.0) / (8.0 * spi) * ((b - 1.0) * i1 - rz * isum) * g1
                + zb * ((b - 1.0) * k1 + rz * ksum) * f23
                + i1 / (4.0 * spi) * (2.0 * spi * z * ((b - 1.0) * lz - 2.0) + (b - 1.0) * g2)
                - z.powf(1.5) * lz / 2.0 * isum
                + 2.0 * (1.0 - b) * zb * k1 * f12;
            Ok(0.5 * z.powf(-0.5 * (b + 1.0)) * body)
        }
    }
}

/// dW/dbeta at alpha = beta = 1: -(1/2) ln z I_0(2 sqrt z) - K_0(2 sqrt z).
pub fn wright_dbeta_unit(z: f64) -> Result<f64> {
    let s = 2.0 * z.sqrt();
    Ok(-0.5 * z.ln() * bessel(BesselKind::I, 0.0, s)? - bessel(BesselKind::K, 0.0, s)?)
}

/// dW/dalpha at alpha = beta = 1 in its published form,
/// (1/2) {sqrt z [K_1(2 sqrt z) - ln z I_1(2 sqrt z)] - I_0(2 sqrt z)}.
///
/// This misses the series value; see [`wright_dalpha_unit`].
pub fn wright_dalpha_unit_published(z: f64) -> Result<f64> {
    let s = 2.0 * z.sqrt();
    let (i0, i1, k1) = (bessel(BesselKind::I, 0.0, s)?, bessel(BesselKind::I, 1.0, s)?, bessel(BesselKind::K, 1.0, s)?);
    Ok(0.5 * (z.sqrt() * (k1 - z.ln() * i1) - i0))
}

/// dW/dalpha at alpha = beta = 1: (1/2) {sqrt z [2 K_1(2 sqrt z) - ln z I_1(2 sqrt z)] - I_0(2 sqrt z)}.
pub fn wright_dalpha_unit(z: f64) -> Result<f64> {
    let s = 2.0 * z.sqrt();
    let (i0, i1, k1) = (bessel(BesselKind::I, 0.0, s)?, bessel(BesselKind::I, 1.0, s)?, bessel(BesselKind::K, 1.0, s)?);
    Ok(0.5 * (z.sqrt() * (2.0 * k1 - z.ln() * i1) - i0))
}

fn check_ml(p: &MLParams) -> Result<()> {
    if !(p.alpha > 0.0) {
        return domain("mittag_leffler", format!("alpha = {} must be positive", p.alpha));
    }
    Ok(())
}

/// E_{alpha,beta}(z) = sum z^k / Gamma(alpha k + beta).
pub fn mittag_leffler(p: &MLParams) -> Result<Complex> {
    check_ml(p)?;
    let mut zk = re(1.0);
    let r = sum_series_from(
        |k| {
            let t = zk * rgamma(re(p.alpha * k as f64 + p.beta));
            zk *= p.z;
            t
        },
        SERIES_TOL,
        SERIES_MAX_TERMS,
        pole_guard(p.alpha, p.beta),
    );
    check_series(r, "mittag_leffler")
}

/// dE/dalpha = -sum k z^k psi(alpha k + beta) / Gamma(alpha k + beta), or the
/// beta-derivative without the factor k.
pub fn ml_deriv_series(target: DerivTarget, p: &MLParams) -> Result<Complex> {
    check_ml(p)?;
    let guard = pole_guard(p.alpha, p.beta);
    if let Some(k) = digamma_pole(p.alpha, p.beta, guard) {
        if !(target == DerivTarget::Alpha && k == 0) {
            return domain("ml_deriv_series", format!("digamma pole at term k = {k}"));
        }
    }
    let mut zk = re(1.0);
    let r = sum_series_from(
        |k| {
            let a = re(p.alpha * k as f64 + p.beta);
            let w = if target == DerivTarget::Alpha { k as f64 } else { 1.0 };
            let t = if w == 0.0 { re(0.0) } else { -zk * psi_over_gamma(a) * w };
            zk *= p.z;
            t
        },
        SERIES_TOL,
        SERIES_MAX_TERMS,
        guard,
    );
    check_series(r, "ml_deriv_series")
}

fn check_q_param(func: &'static str, a: Complex) -> Result<()> {
    if let Some(n) = is_nonpositive_integer(a) {
        return crate::error::pole(func, -(n as f64));
    }
    Ok(())
}

/// Q(a, t) = sum t^k psi(k + a) / (a)_k by direct summation.
pub fn q_series(a: Complex, t: Complex) -> Result<Complex> {
    check_q_param("q_series", a)?;
    let mut w = re(1.0);
    let mut err = None;
    let r = sum_series_from(
        |k| {
            let ak = a + k as f64;
            let term = match digamma(ak) {
                Ok(p) => w * p,
                Err(e) => {
                    err.get_or_insert(e);
                    re(0.0)
                }
            };
            w *= t / ak;
            term
        },
        SERIES_TOL,
        SERIES_MAX_TERMS,
        4,
    );
    if let Some(e) = err {
        return Err(e);
    }
    check_series(r, "q_series")
}

/// P(a, t) = dQ/dt = sum k t^(k-1) psi(k + a) / (a)_k by direct summation.
pub fn p_series(a: Complex, t: Complex) -> Result<Complex> {
    check_q_param("p_series", a)?;
    // w_k = t^(k-1) / (a)_k, starting at k = 1.
    let mut w = a.inv();
    let mut err = None;
    let r = sum_series_from(
        |j| {
            let k = j + 1;
            let ak = a + k as f64;
            let term = match digamma(ak) {
                Ok(p) => w * p * k as f64,
                Err(e) => {
                    err.get_or_insert(e);
                    re(0.0)
                }
            };
            w *= t / ak;
            term
        },
        SERIES_TOL,
        SERIES_MAX_TERMS,
        4,
    );
    if let Some(e) = err {
        return Err(e);
    }
    check_series(r, "p_series")
}

/// 2F2(a, a; a+1, a+1; -t).
fn f22(a: Complex, t: Complex) -> Result<Complex> {
    Ok(pfq(&HypergeometricSpec::new(&[a, a], &[a + 1.0, a + 1.0], -t), CLOSED_TOL)?.value)
}

/// Closed form Q(a, t) = psi(a) + e^t [t^(1-a) psi(a) gamma(a, t) + (t / a^2) 2F2(a, a; a+1, a+1; -t)].
///
/// t^(1-a) gamma(a, t) is formed as t times the entire function t^(-a) gamma(a, t),
/// so the principal branches of the two factors cancel exactly.
pub fn q_func(a: Complex, t: Complex) -> Result<Complex> {
    check_q_param("q_func", a)?;
    let psi = digamma(a)?;
    if t.norm() == 0.0 {
        return Ok(psi);
    }
    let scaled = inc_gamma_lower_scaled(a, t)?;
    Ok(psi + t.exp() * (t * scaled * psi + t / (a * a) * f22(a, t)?))
}

/// Closed form P(a, t) = psi(a) + e^t {(t-a+1)/a^2 2F2(a, a; a+1, a+1; -t) + t^(-a) gamma(a, t) [1 + (t-a+1) psi(a)]}.
pub fn p_func(a: Complex, t: Complex) -> Result<Complex> {
    check_q_param("p_func", a)?;
    let psi = digamma(a)?;
    let scaled = inc_gamma_lower_scaled(a, t)?;
    let u = t - a + 1.0;
    Ok(psi + t.exp() * (u / (a * a) * f22(a, t)? + scaled * (u * psi + 1.0)))
}

/// theta_{n,k} = (1/n) sum_{m=1}^{n} exp(2 pi i m k / n), which is 1 when n divides k and 0 otherwise.
///
/// The exponent is reduced modulo n before the exponential so large k loses no accuracy.
pub fn theta_filter(n: u64, k: u64) -> Complex {
    assert!(n >= 1, "theta_filter needs n >= 1");
    let mut s = re(0.0);
    for m in 1..=n {
        let r = ((m % n) * (k % n)) % n;
        s += Complex::from_polar(1.0, 2.0 * PI * r as f64 / n as f64);
    }
    s / n as f64
}

/// The n-th roots z^(1/n) e^(2 pi i m / n), m = 1..n, of z, starting from the principal root.
fn rotations(z: Complex, n: u32) -> Vec<(Complex, Complex)> {
    let root = z.powf(1.0 / n as f64);
    (1..=n)
        .map(|m| {
            let w = Complex::from_polar(1.0, 2.0 * PI * m as f64 / n as f64);
            (w, root * w)
        })
        .collect()
}

/// Closed forms at integer alpha = n:
///
/// ```text
/// dE/dbeta  = -1 / (n Gamma(beta)) sum_{m=1}^{n} Q(beta, z^(1/n) w_m)
/// dE/dalpha = -z^(1/n) / (n^2 Gamma(beta)) sum_{m=1}^{n} w_m P(beta, z^(1/n) w_m)
/// ```
///
/// with w_m = e^(2 pi i m / n) and the principal root of z.
pub fn ml_deriv_closed_int_alpha(target: DerivTarget, n: u32, beta: f64, z: Complex) -> Result<Complex> {
    if n == 0 {
        return domain("ml_deriv_closed_int_alpha", "n must be at least 1");
    }
    if z.norm() == 0.0 {
        return domain("ml_deriv_closed_int_alpha", "z = 0 has no principal root direction");
    }
    let b = re(beta);
    let nf = n as f64;
    let rg = rgamma(b);
    let mut acc = re(0.0);
    for (w, t) in rotations(z, n) {
        acc += match target {
            DerivTarget::Beta => q_func(b, t)?,
            DerivTarget::Alpha => w * p_func(b, t)?,
        };
    }
    Ok(match target {
        DerivTarget::Beta => -rg * acc / nf,
        DerivTarget::Alpha => -z.powf(1.0 / nf) * rg * acc / (nf * nf),
    })
}

/// Closed forms at alpha = 1/q, q = 1, 2, ...:
///
/// ```text
/// dE/dbeta  = -sum_{h<q} z^h Q(h/q + beta, z^q) / Gamma(h/q + beta)
/// dE/dalpha = -sum_{h<q} z^h [h Q(h/q + beta, z^q) + q z^q P(h/q + beta, z^q)] / Gamma(h/q + beta)
/// ```
pub fn ml_deriv_closed_reciprocal_alpha(target: DerivTarget, q: u32, beta: f64, z: Complex) -> Result<Complex> {
    if q == 0 {
        return domain("ml_deriv_closed_reciprocal_alpha", "q must be at least 1");
    }
    let qf = q as f64;
    let t = z.powu(q);
    let mut acc = re(0.0);
    for h in 0..q {
        let a = re(h as f64 / qf + beta);
        let qv = q_func(a, t)?;
        let inner = match target {
            DerivTarget::Beta => qv,
            DerivTarget::Alpha => qv * h as f64 + p_func(a, t)? * t * qf,
        };
        acc += z.powu(h) * rgamma(a) * inner;
    }
    Ok(-acc)
}

/// The elementary closed forms for alpha, beta in {1, 2} and real z > 0.
pub fn ml_table_closed(alpha: u32, beta: u32, target: DerivTarget, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return domain("ml_table_closed", format!("z = {z} must be positive"));
    }
    let lz = z.ln();
    let s = z.sqrt();
    let e1 = |x: f64| exp_integral(ExpIntKind::E1, x);
    let ei = |x: f64| exp_integral(ExpIntKind::Ei, x);
    let ez = z.exp();
    Ok(match (alpha, beta, target) {
        (1, 1, DerivTarget::Alpha) => 1.0 - ez * (z * (lz + e1(z)?) + 1.0),
        (1, 2, DerivTarget::Alpha) => (1.0 + EULER_GAMMA - ez * (1.0 + (z - 1.0) * (lz + e1(z)?))) / z,
        (2, 1, DerivTarget::Alpha) => {
            (-s).exp() / 8.0
                * (s * (lz - 2.0 * ei(s)? - (2.0 * s).exp() * (2.0 * e1(s)? + lz)) - 2.0 * (s.exp() - 1.0).powi(2))
        }
        (2, 2, DerivTarget::Alpha) => {
            (-s).exp() / (8.0 * s)
                * ((2.0 * s).exp() * ((1.0 - s) * (2.0 * e1(s)? + lz) - 2.0) + (1.0 + s) * (2.0 * ei(s)? - lz) + 2.0)
        }
        (1, 1, DerivTarget::Beta) => -ez * (lz + e1(z)?),
        (1, 2, DerivTarget::Beta) => -(ez * (lz + e1(z)?) + EULER_GAMMA) / z,
        (2, 1, DerivTarget::Beta) => (-s).exp() / 4.0 * (2.0 * ei(s)? - lz - (2.0 * s).exp() * (lz + 2.0 * e1(s)?)),
        (2, 2, DerivTarget::Beta) => {
            (-s).exp() / (4.0 * s) * (lz - 2.0 * ei(s)? - (2.0 * s).exp() * (lz + 2.0 * e1(s)?))
        }
        _ => return domain("ml_table_closed", format!("no table row for alpha = {alpha}, beta = {beta}")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn order_derivative_at_zero_order() {
        let dj = bessel_dnu_series(BesselKind::J, 0.0, 1.0).unwrap();
        assert!(close(dj, 0.5 * PI * bessel(BesselKind::Y, 0.0, 1.0).unwrap(), 1e-12));
        let di = bessel_dnu_series(BesselKind::I, 0.0, 1.0).unwrap();
        assert!(close(di, -bessel(BesselKind::K, 0.0, 1.0).unwrap(), 1e-12));
    }

    #[test]
    fn order_derivative_series_matches_finite_difference() {
        let h = 1e-5;
        for (kind, nu, x) in [(BesselKind::J, 1.5, 2.0), (BesselKind::I, 2.3, 1.0), (BesselKind::J, -0.3, 3.0)] {
            let fd = (bessel(kind, nu + h, x).unwrap() - bessel(kind, nu - h, x).unwrap()) / (2.0 * h);
            let s = bessel_dnu_series(kind, nu, x).unwrap();
            assert!((s - fd).abs() < 1e-8, "{kind:?} {nu} {x}: {s} vs {fd}");
        }
    }

    #[test]
    fn j_series_and_integral_agree_at_crossover() {
        for nu in [0.0, 0.7, 3.0, -2.5] {
            let a = bessel_dnu_series(BesselKind::J, nu, J_SERIES_MAX_X).unwrap();
            let b = dj_dnu_integral(nu, J_SERIES_MAX_X).unwrap();
            assert!((a - b).abs() < 1e-11, "nu = {nu}: {a} vs {b}");
        }
    }

    #[test]
    fn order_derivative_closed_forms() {
        for kind in [BesselKind::J, BesselKind::I] {
            for nu in [0.0, 1.2, 1.5, 2.0, 2.3, -0.5, -0.3, -1.0, -2.0] {
                for x in [0.5, 1.0, 2.0, 5.0] {
                    let s = bessel_dnu_series(kind, nu, x).unwrap();
                    let c = bessel_dnu_closed(kind, nu, x).unwrap();
                    assert!(close(c, s, 1e-8), "{kind:?} nu={nu} x={x}: {c} vs {s}");
                }
            }
        }
    }

    #[test]
    fn wright_special_values() {
        let w = |a, b, z: f64| wright(&WrightParams { alpha: a, beta: b, z: re(z) }).unwrap().re;
        assert!(close(w(1.0, 1.0, 1.0), bessel(BesselKind::I, 0.0, 2.0).unwrap(), 1e-14));
        assert!(close(w(1.0, 2.0, 1.0), bessel(BesselKind::I, 1.0, 2.0).unwrap(), 1e-14));
        assert!(close(w(0.7, 2.5, 0.0), rgamma(re(2.5)).re, 1e-15));
        // W_{-1/2, 1/2}(-z) = exp(-z^2/4) / sqrt(pi).
        assert!(close(w(-0.5, 0.5, -1.3), (-1.3f64 * 1.3 / 4.0).exp() / PI.sqrt(), 1e-13));
    }

    #[test]
    fn wright_derivatives_at_unit_parameters() {
        let p = WrightParams { alpha: 1.0, beta: 1.0, z: re(1.0) };
        let db = wright_deriv_series(DerivTarget::Beta, &p).unwrap().re;
        let da = wright_deriv_series(DerivTarget::Alpha, &p).unwrap().re;
        assert!(close(db, -0.113893872749533435, 1e-14));
        assert!(close(da, -0.999926769351511, 1e-13));
        assert!(close(wright_dbeta_unit(1.0).unwrap(), db, 1e-12));
        assert!(close(wright_dalpha_unit(1.0).unwrap(), da, 1e-12));
        assert!((wright_dalpha_unit_published(1.0).unwrap() - da).abs() > 1e-2);
    }

    #[test]
    fn wright_closed_forms_at_unit_alpha() {
        for b in [1.0, 1.5, 2.0, 3.7] {
            for z in [0.25, 0.5, 1.0, 4.0] {
                let p = WrightParams { alpha: 1.0, beta: b, z: re(z) };
                for target in [DerivTarget::Alpha, DerivTarget::Beta] {
                    let s = wright_deriv_series(target, &p).unwrap().re;
                    let c = wright_deriv_closed_alpha1(target, b, z).unwrap();
                    assert!(close(c, s, 1e-8), "{target:?} b={b} z={z}: {c} vs {s}");
                }
            }
        }
    }

    #[test]
    fn wright_digamma_pole_is_domain_error() {
        let p = WrightParams { alpha: 1.0, beta: -1.0, z: re(0.5) };
        assert!(matches!(wright_deriv_series(DerivTarget::Beta, &p), Err(Error::Domain { .. })));
        assert!(wright(&p).is_ok());
        assert!(wright(&WrightParams { alpha: -1.0, beta: 1.0, z: re(1.0) }).is_err());
    }

    #[test]
    fn mittag_leffler_elementary_cases() {
        let e = |a, b, z: f64| mittag_leffler(&MLParams { alpha: a, beta: b, z: re(z) }).unwrap().re;
        assert!(close(e(1.0, 1.0, 1.3), 1.3f64.exp(), 1e-14));
        assert!(close(e(2.0, 1.0, 2.0), 2f64.sqrt().cosh(), 1e-14));
        assert!(close(e(1.0, 2.0, 0.7), (0.7f64.exp() - 1.0) / 0.7, 1e-14));
    }

    #[test]
    fn mittag_leffler_derivatives_at_unit_parameters() {
        let p = MLParams { alpha: 1.0, beta: 1.0, z: re(1.0) };
        assert!(close(ml_deriv_series(DerivTarget::Alpha, &p).unwrap().re, -2.31462919078224, 1e-13));
        assert!(close(ml_deriv_series(DerivTarget::Beta, &p).unwrap().re, -0.596347362323194, 1e-13));
        let p0 = MLParams { z: re(0.0), ..p };
        assert_eq!(ml_deriv_series(DerivTarget::Alpha, &p0).unwrap(), re(0.0));
    }

    #[test]
    fn q_and_p_series_match_closed_forms() {
        let ts = [re(0.5), re(2.0), c64(1.0, 1.0), Complex::from_polar(1.0, 2.0 * PI / 3.0), re(-3.0)];
        for a in [0.7, 1.0, 1.5, 2.0] {
            for t in ts {
                let (qs, qc) = (q_series(re(a), t).unwrap(), q_func(re(a), t).unwrap());
                assert!((qs - qc).norm() < 1e-12 * qs.norm().max(1.0), "Q a={a} t={t}: {qs} vs {qc}");
                let (ps, pc) = (p_series(re(a), t).unwrap(), p_func(re(a), t).unwrap());
                assert!((ps - pc).norm() < 1e-12 * ps.norm().max(1.0), "P a={a} t={t}: {ps} vs {pc}");
            }
        }
        assert_eq!(q_func(re(1.3), re(0.0)).unwrap(), digamma(re(1.3)).unwrap());
    }

    #[test]
    fn p_is_the_t_derivative_of_q() {
        let h = 1e-6;
        let fd = (q_series(re(1.0), re(0.5 + h)).unwrap() - q_series(re(1.0), re(0.5 - h)).unwrap()) / (2.0 * h);
        assert!((p_func(re(1.0), re(0.5)).unwrap() - fd).norm() < 1e-8);
    }

    #[test]
    fn theta_filter_values() {
        assert!((theta_filter(3, 6) - re(1.0)).norm() < 1e-15);
        assert!(theta_filter(3, 5).norm() < 1e-15);
        assert!((theta_filter(1, 17) - re(1.0)).norm() < 1e-15);
    }

    #[test]
    fn integer_alpha_closed_forms() {
        for n in [1, 2, 3] {
            for b in [1.0, 2.0, 2.5] {
                for z in [0.5, 1.0, 2.0] {
                    let p = MLParams { alpha: n as f64, beta: b, z: re(z) };
                    for target in [DerivTarget::Alpha, DerivTarget::Beta] {
                        let s = ml_deriv_series(target, &p).unwrap();
                        let c = ml_deriv_closed_int_alpha(target, n, b, re(z)).unwrap();
                        assert!(c.im.abs() < 1e-12, "{target:?} n={n} b={b} z={z}: im {}", c.im);
                        assert!(close(c.re, s.re, 1e-11), "{target:?} n={n} b={b} z={z}: {c} vs {s}");
                    }
                }
            }
        }
    }

    #[test]
    fn reciprocal_alpha_closed_forms() {
        for q in [1, 2, 3] {
            for (b, z) in [(1.0, c64(0.5, 0.0)), (1.7, c64(0.6, -0.4)), (2.5, c64(1.1, 0.0))] {
                let p = MLParams { alpha: 1.0 / q as f64, beta: b, z };
                for target in [DerivTarget::Alpha, DerivTarget::Beta] {
                    let s = ml_deriv_series(target, &p).unwrap();
                    let c = ml_deriv_closed_reciprocal_alpha(target, q, b, z).unwrap();
                    assert!((c - s).norm() < 1e-11 * s.norm().max(1.0), "{target:?} q={q}: {c} vs {s}");
                }
            }
        }
    }

    #[test]
    fn table_rows_match_series() {
        for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            for z in [0.25, 0.5, 1.0, 2.0] {
                let p = MLParams { alpha: a as f64, beta: b as f64, z: re(z) };
                for target in [DerivTarget::Alpha, DerivTarget::Beta] {
                    let s = ml_deriv_series(target, &p).unwrap().re;
                    let t = ml_table_closed(a, b, target, z).unwrap();
                    assert!(close(t, s, 1e-12), "({a},{b},{target:?}) z={z}: {t} vs {s}");
                }
            }
        }
    }
}
