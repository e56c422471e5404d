//! Generalized hypergeometric series and the closed forms they reduce to.

use crate::error::{domain, pole, Error, Result};
use crate::series::{sum_series_from, sum_slow_series, SeriesResult};
use crate::specfun::{beta, digamma, dilog, inc_beta, is_nonpositive_integer, lerch_phi, EULER_GAMMA};
use crate::Complex;

/// Parameters of pFq(a_1..a_p; b_1..b_q; z).
#[derive(Debug, Clone, PartialEq)]
pub struct HypergeometricSpec {
    pub numerator: Vec<Complex>,
    pub denominator: Vec<Complex>,
    pub argument: Complex,
}

impl HypergeometricSpec {
    pub fn new(numerator: &[Complex], denominator: &[Complex], argument: Complex) -> Self {
        Self { numerator: numerator.to_vec(), denominator: denominator.to_vec(), argument }
    }

    pub fn p(&self) -> usize {
        self.numerator.len()
    }

    pub fn q(&self) -> usize {
        self.denominator.len()
    }

    /// Ratio t_(k+1) / t_k of consecutive series terms.
    fn ratio(&self, k: usize) -> Complex {
        let kf = k as f64;
        let num = self.numerator.iter().fold(Complex::new(1.0, 0.0), |p, a| p * (a + kf));
        let den = self.denominator.iter().fold(Complex::new(kf + 1.0, 0.0), |p, b| p * (b + kf));
        num * self.argument / den
    }

    /// Degree of the polynomial when some numerator parameter is a nonpositive integer.
    fn terminating_degree(&self) -> Option<u64> {
        self.numerator.iter().filter_map(|a| is_nonpositive_integer(*a)).min()
    }
}

/// First `n` terms of the series, generated by the term-ratio recurrence.
pub fn pfq_terms(spec: &HypergeometricSpec, n: usize) -> Vec<Complex> {
    let mut out = Vec::with_capacity(n);
    let mut t = Complex::new(1.0, 0.0);
    for k in 0..n {
        out.push(t);
        t *= spec.ratio(k);
    }
    out
}

const ENTIRE_MAX_TERMS: usize = 100_000;
const UNITY_MAX_TERMS: usize = 1 << 20;

/// Sums pFq by its defining series.
///
/// Converges for p <= q everywhere, for p = q + 1 inside the unit disc, and
/// at z = 1 when Re(sum b - sum a) > 0, where the algebraic tail is
/// extrapolated from partial sums up to about 10^6 terms.
pub fn pfq(spec: &HypergeometricSpec, tol: f64) -> Result<SeriesResult> {
    let degree = spec.terminating_degree();
    for b in &spec.denominator {
        if let Some(n) = is_nonpositive_integer(*b) {
            if degree.is_none_or(|m| m > n) {
                return pole("pfq", format!("denominator parameter {}", b.re));
            }
        }
    }
    if let Some(m) = degree {
        let mut t = Complex::new(1.0, 0.0);
        let mut acc = crate::series::KahanSum::new();
        for k in 0..=m as usize {
            acc.add(t);
            t *= spec.ratio(k);
        }
        return Ok(SeriesResult { value: acc.value(), terms_used: m as usize + 1, err_estimate: 0.0, converged: true });
    }
    // Terms may dip or change sign until k passes every negative parameter.
    let min_terms = spec
        .numerator
        .iter()
        .chain(spec.denominator.iter())
        .filter(|a| a.re < 0.0)
        .map(|a| (-a.re).ceil() as usize + 2)
        .max()
        .unwrap_or(0);
    let z = spec.argument;
    let mut t = Complex::new(1.0, 0.0);
    let term = |k: usize| {
        let out = t;
        t *= spec.ratio(k);
        out
    };
    let (p, q) = (spec.p(), spec.q());
    let r = if p <= q || (p == q + 1 && z.norm() < 1.0) {
        sum_series_from(term, tol, ENTIRE_MAX_TERMS, min_terms)
    } else if p == q + 1 && z == Complex::new(1.0, 0.0) {
        let excess: Complex = spec.denominator.iter().sum::<Complex>() - spec.numerator.iter().sum::<Complex>();
        if excess.re <= 0.0 {
            return domain("pfq", "divergent at z = 1: Re(sum b - sum a) <= 0");
        }
        sum_slow_series(term, tol, UNITY_MAX_TERMS)
    } else {
        return domain("pfq", format!("series diverges for p = {p}, q = {q}, |z| = {}", z.norm()));
    };
    if !r.converged {
        return Err(Error::NonConvergence { what: "pfq", terms: r.terms_used });
    }
    Ok(r)
}

/// 2F1(alpha, beta; beta + 1; z) = beta z^(-beta) B_z(beta, 1 - alpha).
pub fn reduce_2f1_to_incbeta(alpha: Complex, beta_: Complex, z: Complex) -> Result<Complex> {
    if z.norm() >= 1.0 {
        return domain("reduce_2f1_to_incbeta", "needs |z| < 1");
    }
    if z.norm() == 0.0 {
        return Ok(Complex::new(1.0, 0.0));
    }
    let one = Complex::new(1.0, 0.0);
    Ok(beta_ * z.powc(-beta_) * inc_beta(z, beta_, one - alpha)?)
}

/// 2F1(1, b; c; z) = (c - 1) z^(1-c) (1-z)^(c-b-1) B_z(c - 1, b - c + 1).
pub fn reduce_2f1_1bc(b: Complex, c: Complex, z: Complex) -> Result<Complex> {
    if z.norm() >= 1.0 || z.norm() == 0.0 {
        return domain("reduce_2f1_1bc", "needs 0 < |z| < 1");
    }
    let one = Complex::new(1.0, 0.0);
    Ok((c - 1.0) * z.powc(one - c) * (one - z).powc(c - b - 1.0) * inc_beta(z, c - 1.0, b - c + 1.0)?)
}

/// 3F2(alpha, beta, beta; beta + 1, beta + 1; 1) = beta^2 B(1 - alpha, beta) [psi(1 + beta - alpha) - psi(beta)].
pub fn f32_at_unity(alpha: Complex, beta_: Complex) -> Result<Complex> {
    let one = Complex::new(1.0, 0.0);
    let b = beta(one - alpha, beta_)?;
    Ok(beta_ * beta_ * b * (digamma(one + beta_ - alpha)? - digamma(beta_)?))
}

/// 3F2(1, 1, a; 2, 2; z) = [psi(2 - a) + gamma + ln z + B_(1-z)(2 - a, 0)] / ((1 - a) z).
///
/// At a = 1 the right-hand side is 0/0; use [`f32_111_22`] there.
pub fn f32_112_22(a: Complex, z: Complex) -> Result<Complex> {
    let one = Complex::new(1.0, 0.0);
    if a == one {
        return domain("f32_112_22", "a = 1 is a removable singularity; use f32_111_22");
    }
    if z.norm() == 0.0 {
        return Ok(one);
    }
    let two_minus_a = Complex::new(2.0, 0.0) - a;
    let b = inc_beta(one - z, two_minus_a, Complex::new(0.0, 0.0))?;
    Ok((digamma(two_minus_a)? + EULER_GAMMA + z.ln() + b) / ((one - a) * z))
}

/// 3F2(1, 1, 1; 2, 2; z) = Li2(z) / z.
pub fn f32_111_22(z: Complex) -> Complex {
    if z.norm() == 0.0 {
        return Complex::new(1.0, 0.0);
    }
    dilog(z) / z
}

/// 3F2(1, lambda, lambda; lambda + 1, lambda + 1; z^2) = lambda^2 Phi(z^2, 2, lambda).
pub fn f32_to_lerch(lambda: Complex, z2: Complex) -> Result<Complex> {
    if z2.norm() >= 1.0 {
        return domain("f32_to_lerch", "needs |z^2| < 1");
    }
    Ok(lambda * lambda * lerch_phi(z2, Complex::new(2.0, 0.0), lambda)?)
}
