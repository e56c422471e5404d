//! Incomplete beta and gamma functions and the exponential integrals.

use crate::error::{domain, pole, Error, Result};
use crate::series::sum_series;
use crate::specfun::gamma::{beta, is_nonpositive_integer};
use crate::specfun::EULER_GAMMA;
use crate::Complex;

const SERIES_TOL: f64 = 1e-17;
const SERIES_MAX_TERMS: usize = 200_000;

fn zero() -> Complex {
    Complex::new(0.0, 0.0)
}

/// Replaces a negative-zero imaginary part so the principal branch is taken from above.
fn upper_side(z: Complex) -> Complex {
    if z.im == 0.0 {
        Complex::new(z.re, 0.0)
    } else {
        z
    }
}

/// Incomplete beta function B_z(a, b) = integral of t^(a-1) (1-t)^(b-1) over [0, z].
///
/// Evaluated from `z^a sum (1-b)_k z^k / (k! (a+k))`, so b may be zero or
/// negative, and a may have nonpositive real part (analytic continuation in
/// a) as long as it is not a nonpositive integer.
pub fn inc_beta(z: Complex, a: Complex, b: Complex) -> Result<Complex> {
    if let Some(n) = is_nonpositive_integer(a) {
        return pole("inc_beta", -(n as f64));
    }
    if z == Complex::new(1.0, 0.0) {
        if b.re > 0.0 {
            return beta(a, b);
        }
        return domain("inc_beta", "z = 1 needs Re b > 0");
    }
    if z.norm() >= 1.0 {
        return domain("inc_beta", format!("|z| = {} must be below 1", z.norm()));
    }
    if z.norm() == 0.0 {
        if a.re > 0.0 {
            return Ok(zero());
        }
        return domain("inc_beta", "z = 0 needs Re a > 0");
    }
    let one_minus_b = Complex::new(1.0, 0.0) - b;
    let mut t = Complex::new(1.0, 0.0);
    let r = sum_series(
        |k| {
            let term = t / (a + k as f64);
            t *= (one_minus_b + k as f64) * z / (k as f64 + 1.0);
            term
        },
        SERIES_TOL,
        SERIES_MAX_TERMS,
    );
    if !r.converged {
        return Err(Error::NonConvergence { what: "inc_beta", terms: r.terms_used });
    }
    Ok(upper_side(z).powc(a) * r.value)
}

/// B_z(n + 1/2, 0) = 2 [artanh(sqrt z) - sum_{k<n} z^(k+1/2) / (2k+1)].
pub fn inc_beta_half_integer(z: Complex, n: u32) -> Result<Complex> {
    if z == Complex::new(1.0, 0.0) {
        return domain("inc_beta_half_integer", "logarithmic singularity at z = 1");
    }
    let s = upper_side(z).sqrt();
    let mut acc = s.atanh();
    let mut p = s;
    for k in 0..n {
        acc -= p / (2.0 * k as f64 + 1.0);
        p *= z;
    }
    Ok(acc * 2.0)
}

/// t^(-a) gamma(a, t), which is entire in t and free of branch cuts.
pub fn inc_gamma_lower_scaled(a: Complex, t: Complex) -> Result<Complex> {
    if let Some(n) = is_nonpositive_integer(a) {
        return pole("inc_gamma_lower", -(n as f64));
    }
    let r = if t.re >= 0.0 {
        // e^(-t) sum t^k / (a)_(k+1): all terms share a sign for t >= 0.
        let mut p = a.inv();
        let s = sum_series(
            |k| {
                let term = p;
                p *= t / (a + k as f64 + 1.0);
                term
            },
            SERIES_TOL,
            SERIES_MAX_TERMS,
        );
        (s, (-t).exp())
    } else {
        // sum (-t)^k / (k! (a+k)): all terms share a sign for t <= 0.
        let mut p = Complex::new(1.0, 0.0);
        let s = sum_series(
            |k| {
                let term = p / (a + k as f64);
                p *= -t / (k as f64 + 1.0);
                term
            },
            SERIES_TOL,
            SERIES_MAX_TERMS,
        );
        (s, Complex::new(1.0, 0.0))
    };
    if !r.0.converged {
        return Err(Error::NonConvergence { what: "inc_gamma_lower", terms: r.0.terms_used });
    }
    Ok(r.0.value * r.1)
}

/// Lower incomplete gamma function gamma(a, t) on the principal branch of t^a.
pub fn inc_gamma_lower(a: Complex, t: Complex) -> Result<Complex> {
    if t.norm() == 0.0 {
        if a.re > 0.0 {
            return Ok(zero());
        }
        return domain("inc_gamma_lower", "t = 0 needs Re a > 0");
    }
    Ok(upper_side(t).powc(a) * inc_gamma_lower_scaled(a, t)?)
}

const E1_SERIES_MAX_ABS: f64 = 2.0;
const E1_SERIES_LIMIT: f64 = 40.0;

fn e1_series(z: Complex) -> Result<Complex> {
    let mut p = Complex::new(1.0, 0.0);
    let r = sum_series(
        |k| {
            if k == 0 {
                return zero();
            }
            p *= -z / k as f64;
            p / k as f64
        },
        SERIES_TOL,
        SERIES_MAX_TERMS,
    );
    if !r.converged {
        return Err(Error::NonConvergence { what: "gamma_upper_0", terms: r.terms_used });
    }
    Ok(-EULER_GAMMA - upper_side(z).ln() - r.value)
}

fn e1_continued_fraction(z: Complex) -> Result<Complex> {
    // Modified Lentz on e^z E1(z) = 1/(z+1- 1/(z+3- 4/(z+5- ...))).
    let tiny = Complex::new(1e-150, 0.0);
    let mut b = z + 1.0;
    let mut c = tiny.inv();
    let mut d = b.inv();
    let mut h = d;
    for i in 1..10_000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = d * an + b;
        if d.norm() == 0.0 {
            d = tiny;
        }
        d = d.inv();
        c = b + c.inv() * an;
        if c.norm() == 0.0 {
            c = tiny;
        }
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-15 {
            return Ok(h * (-z).exp());
        }
    }
    Err(Error::NonConvergence { what: "gamma_upper_0", terms: 10_000 })
}

/// Gamma(0, z) = E1(z) for complex z off the branch cut.
pub fn gamma_upper_0(z: Complex) -> Result<Complex> {
    if z.norm() == 0.0 {
        return pole("gamma_upper_0", 0.0);
    }
    if z.norm() <= E1_SERIES_MAX_ABS {
        e1_series(z)
    } else if z.re > 0.0 {
        e1_continued_fraction(z)
    } else if z.norm() <= E1_SERIES_LIMIT {
        e1_series(z)
    } else {
        domain("gamma_upper_0", "|z| > 40 with Re z <= 0")
    }
}

/// Which exponential integral [`exp_integral`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpIntKind {
    /// Principal value of the integral of e^t / t over (-inf, x].
    Ei,
    /// Integral of e^(-t) / t over [x, inf).
    E1,
}

const EI_SERIES_MAX: f64 = 40.0;

/// Ei(x) or E1(x) for real x > 0.
pub fn exp_integral(kind: ExpIntKind, x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return domain("exp_integral", format!("x = {x} must be positive"));
    }
    match kind {
        ExpIntKind::E1 => Ok(gamma_upper_0(Complex::new(x, 0.0))?.re),
        ExpIntKind::Ei if x <= EI_SERIES_MAX => {
            let mut p = 1.0;
            let r = sum_series(
                |k| {
                    if k == 0 {
                        return zero();
                    }
                    p *= x / k as f64;
                    Complex::new(p / k as f64, 0.0)
                },
                SERIES_TOL,
                SERIES_MAX_TERMS,
            );
            Ok(EULER_GAMMA + x.ln() + r.value.re)
        }
        ExpIntKind::Ei => {
            // Asymptotic series, truncated at its smallest term.
            let mut term = 1.0;
            let mut s = 1.0;
            for k in 1..200 {
                let next = term * k as f64 / x;
                if next >= term || next < 1e-17 * s {
                    break;
                }
                term = next;
                s += term;
            }
            Ok(x.exp() / x * s)
        }
    }
}
