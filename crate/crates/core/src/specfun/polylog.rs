//! Dilogarithm and Lerch transcendent.

use std::f64::consts::PI;

use crate::error::{domain, pole, Error, Result};
use crate::series::{sum_series, sum_slow_series};
use crate::specfun::gamma::{is_nonpositive_integer, BERNOULLI_2K};
use crate::Complex;

const ZETA2: f64 = PI * PI / 6.0;

/// Dilogarithm Li2(z), continuous from above across the cut [1, inf).
///
/// The argument is mapped into |z| <= 1, Re z <= 1/2 by inversion and
/// reflection, then summed as a Bernoulli series in -ln(1 - z).
pub fn dilog(z: Complex) -> Complex {
    let one = Complex::new(1.0, 0.0);
    if z.norm() == 0.0 {
        return Complex::new(0.0, 0.0);
    }
    if z == one {
        return Complex::new(ZETA2, 0.0);
    }
    if z.norm() > 1.0 {
        // The sign of a zero imaginary part selects the side of the cut.
        let neg = Complex::new(-z.re, -z.im);
        let l = neg.ln();
        return -dilog(z.inv()) - ZETA2 - l * l * 0.5;
    }
    if z.re > 0.5 {
        return -dilog(one - z) + ZETA2 - z.ln() * (one - z).ln();
    }
    let u = -(one - z).ln();
    let u2 = u * u;
    let mut s = u - u2 * 0.25;
    let mut p = u;
    let mut fact = 1.0;
    for (k, b) in BERNOULLI_2K.iter().enumerate() {
        let m = 2.0 * (k as f64 + 1.0);
        p *= u2;
        fact *= m * (m + 1.0);
        let t = p * (b / fact);
        s += t;
        if t.norm() < 1e-17 * s.norm() {
            break;
        }
    }
    s
}

/// Lerch transcendent Phi(z, s, b) = sum_{k>=0} z^k / (k + b)^s.
///
/// Needs |z| < 1, or |z| = 1 with Re s > 1 (summed with tail extrapolation).
pub fn lerch_phi(z: Complex, s: Complex, b: Complex) -> Result<Complex> {
    if let Some(n) = is_nonpositive_integer(b) {
        return pole("lerch_phi", -(n as f64));
    }
    let r = z.norm();
    let mut zk = Complex::new(1.0, 0.0);
    let term = |k: usize| {
        let t = zk * (b + k as f64).powc(-s);
        zk *= z;
        t
    };
    if r < 1.0 {
        let res = sum_series(term, 1e-17, 2_000_000);
        if !res.converged {
            return Err(Error::NonConvergence { what: "lerch_phi", terms: res.terms_used });
        }
        return Ok(res.value);
    }
    if (r - 1.0).abs() < 1e-15 && s.re > 1.0 {
        let res = sum_slow_series(term, 1e-10, 1 << 20);
        if !res.converged {
            return Err(Error::NonConvergence { what: "lerch_phi", terms: res.terms_used });
        }
        return Ok(res.value);
    }
    domain("lerch_phi", "needs |z| < 1, or |z| = 1 with Re s > 1")
}
