//! Bessel functions J, Y, I, K of real order and positive real argument.
//!
//! J and I come from the ascending series. Y and K come from the reflection
//! formulas, with integer orders reached by symmetric extrapolation in the
//! order. Past a crossover in x the series loses too many digits to
//! cancellation, so J, Y and K switch to their integral representations:
//!
//! ```text
//! J_v(x) = (1/pi) int_0^pi cos(v t - x sin t) dt - (sin v pi / pi) int_0^inf e^(-x sinh t - v t) dt
//! Y_v(x) = (1/pi) int_0^pi sin(x sin t - v t) dt - (1/pi) int_0^inf (e^(v t) + e^(-v t) cos v pi) e^(-x sinh t) dt
//! K_v(x) = int_0^inf e^(-x cosh t) cosh(v t) dt
//! ```

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::series::{extrapolate_eps_levels, integrate, sum_series};
use crate::specfun::gamma::{cos_pi, rgamma, sin_pi};
use crate::Complex;

/// Which Bessel function [`bessel`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum BesselKind {
    J,
    Y,
    I,
    K,
}

/// Above these x the series or reflection formula gives way to the integral representation.
const J_SERIES_MAX_X: f64 = 8.0;
const Y_REFLECTION_MAX_X: f64 = 4.0;
const K_REFLECTION_MAX_X: f64 = 2.0;
const MAX_X: f64 = 30.0;
const MAX_ORDER: f64 = 10.0;
/// Orders closer than this to an integer are reached by extrapolation.
const NEAR_INTEGER: f64 = 5e-4;
/// Four halvings from 1e-2 keep every sample at least 7.5e-4 away from the integer.
const ORDER_EPS: f64 = 1e-2;
const EXTRAPOLATION_LEVELS: usize = 4;
/// Infinite integrals are cut where the integrand has dropped by e^-45.
const TAIL_LOG_DROP: f64 = 45.0;
const QUAD_TOL: f64 = 1e-15;

/// Bessel function of the given kind, order `nu` (|nu| <= 10) and argument 0 < x <= 30.
pub fn bessel(kind: BesselKind, nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0 && x <= MAX_X) {
        return domain("bessel", format!("x = {x} outside (0, 30]"));
    }
    if !(nu.abs() <= MAX_ORDER) {
        return domain("bessel", format!("order {nu} outside [-10, 10]"));
    }
    match kind {
        BesselKind::J if x <= J_SERIES_MAX_X => ascending_series(nu, x, -1.0),
        BesselKind::J => j_integral(nu, x),
        BesselKind::I => ascending_series(nu, x, 1.0),
        BesselKind::Y if x <= Y_REFLECTION_MAX_X => near_integer(nu, |v| y_reflection(v, x)),
        BesselKind::Y => y_integral(nu, x),
        BesselKind::K if x <= K_REFLECTION_MAX_X => near_integer(nu.abs(), |v| k_reflection(v, x)),
        BesselKind::K => k_integral(nu.abs(), x),
    }
}

/// sum (sign x^2/4)^k (x/2)^nu / (k! Gamma(nu+k+1)): J for sign -1, I for sign +1.
fn ascending_series(nu: f64, x: f64, sign: f64) -> Result<f64> {
    if nu < 0.0 && nu.fract() == 0.0 {
        // J_(-n) = (-1)^n J_n and I_(-n) = I_n.
        let n = -nu;
        let v = ascending_series(n, x, sign)?;
        let odd = (n as i64) % 2 == 1;
        return Ok(if sign < 0.0 && odd { -v } else { v });
    }
    let q = sign * 0.25 * x * x;
    let mut t = (0.5 * x).powf(nu) * rgamma(Complex::new(nu + 1.0, 0.0)).re;
    let r = sum_series(
        |k| {
            let term = t;
            t *= q / ((k as f64 + 1.0) * (nu + k as f64 + 1.0));
            Complex::new(term, 0.0)
        },
        1e-17,
        1000,
    );
    if !r.converged {
        return Err(Error::NonConvergence { what: "bessel series", terms: r.terms_used });
    }
    Ok(r.value.re)
}

fn y_reflection(nu: f64, x: f64) -> Result<f64> {
    let jp = ascending_series(nu, x, -1.0)?;
    let jm = ascending_series(-nu, x, -1.0)?;
    Ok((jp * cos_pi(nu) - jm) / sin_pi(nu))
}

fn k_reflection(nu: f64, x: f64) -> Result<f64> {
    let ip = ascending_series(nu, x, 1.0)?;
    let im = ascending_series(-nu, x, 1.0)?;
    Ok(0.5 * PI * (im - ip) / sin_pi(nu))
}

/// Evaluates a reflection formula, extrapolating across the integer orders where it is 0/0.
fn near_integer<F: Fn(f64) -> Result<f64>>(nu: f64, f: F) -> Result<f64> {
    let d = nu - nu.round();
    if d.abs() >= NEAR_INTEGER {
        return f(nu);
    }
    Ok(extrapolate_eps_levels(|e| f(nu + e).map(|v| Complex::new(v, 0.0)), ORDER_EPS, EXTRAPOLATION_LEVELS)?.re)
}

/// Smallest T on a 1/4 grid with `log_integrand(T) <= log_integrand(0) - TAIL_LOG_DROP` past the peak.
pub(crate) fn tail_cutoff<F: Fn(f64) -> f64>(log_integrand: F) -> f64 {
    let mut peak = log_integrand(0.0);
    let mut t = 0.0;
    loop {
        t += 0.25;
        let v = log_integrand(t);
        peak = peak.max(v);
        if v <= peak - TAIL_LOG_DROP || t > 50.0 {
            return t;
        }
    }
}

fn real_integral<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> Result<f64> {
    Ok(integrate(|t| Complex::new(f(t), 0.0), a, b, QUAD_TOL)?.value.re)
}

fn j_integral(nu: f64, x: f64) -> Result<f64> {
    let finite = real_integral(|t| (nu * t - x * t.sin()).cos(), 0.0, PI)? / PI;
    let s = sin_pi(nu);
    if s == 0.0 {
        return Ok(finite);
    }
    let cut = tail_cutoff(|t| -x * t.sinh() - nu * t);
    let tail = real_integral(|t| (-x * t.sinh() - nu * t).exp(), 0.0, cut)?;
    Ok(finite - s * tail / PI)
}

fn y_integral(nu: f64, x: f64) -> Result<f64> {
    let finite = real_integral(|t| (x * t.sin() - nu * t).sin(), 0.0, PI)? / PI;
    let c = cos_pi(nu);
    let cut = tail_cutoff(|t| nu.abs() * t - x * t.sinh());
    let tail = real_integral(|t| ((nu * t).exp() + (-nu * t).exp() * c) * (-x * t.sinh()).exp(), 0.0, cut)?;
    Ok(finite - tail / PI)
}

fn k_integral(nu: f64, x: f64) -> Result<f64> {
    // Factor e^-x out so the integrand starts at 1.
    let cut = tail_cutoff(|t| nu * t - x * (t.cosh() - 1.0));
    let v = real_integral(|t| (-x * (t.cosh() - 1.0)).exp() * (nu * t).cosh(), 0.0, cut)?;
    Ok(v * (-x).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn reference_values() {
        // Fifteen-digit reference values.
        let cases = [
            (BesselKind::J, 0.0, 1.0, 0.765197686557966551),
            (BesselKind::J, 2.5, 10.0, 0.196658483581818413),
            (BesselKind::Y, 0.0, 1.0, 0.0882569642156769580),
            (BesselKind::Y, 1.0, 20.0, -0.165511614362521),
            (BesselKind::I, 1.0, 2.0, 1.59063685463732906),
            (BesselKind::K, 0.0, 2.0, 0.113893872749533435),
            (BesselKind::K, 3.0, 12.0, 3.15163023413586205e-6),
        ];
        for (kind, nu, x, want) in cases {
            let got = bessel(kind, nu, x).unwrap();
            assert!(close(got, want, 1e-12), "{kind:?}({nu}, {x}) = {got}, want {want}");
        }
    }

    #[test]
    fn half_order_closed_forms() {
        for x in [0.3, 2.0, 7.5, 9.0, 25.0] {
            let s = (2.0 / (PI * x)).sqrt();
            assert!(close(bessel(BesselKind::J, 0.5, x).unwrap(), s * x.sin(), 1e-12));
            assert!(close(bessel(BesselKind::Y, 0.5, x).unwrap(), -s * x.cos(), 1e-12));
            let k = (PI / (2.0 * x)).sqrt() * (-x).exp();
            assert!(close(bessel(BesselKind::K, 0.5, x).unwrap(), k, 1e-12 * k.max(1e-300)));
        }
    }

    #[test]
    fn crossovers_are_continuous() {
        for nu in [0.0, 1.0, 2.3, 7.0] {
            for (kind, x) in [(BesselKind::J, J_SERIES_MAX_X), (BesselKind::Y, Y_REFLECTION_MAX_X)] {
                let a = ascending_or_reflection(kind, nu, x);
                let b = if kind == BesselKind::J { j_integral(nu, x).unwrap() } else { y_integral(nu, x).unwrap() };
                assert!(close(a, b, 1e-11), "{kind:?} nu={nu}: {a} vs {b}");
            }
            let a = near_integer(nu, |v| k_reflection(v, K_REFLECTION_MAX_X)).unwrap();
            let b = k_integral(nu, K_REFLECTION_MAX_X).unwrap();
            assert!((a - b).abs() < 1e-11 * b.abs(), "K nu={nu}: {a} vs {b}");
        }
    }

    fn ascending_or_reflection(kind: BesselKind, nu: f64, x: f64) -> f64 {
        match kind {
            BesselKind::J => ascending_series(nu, x, -1.0).unwrap(),
            _ => near_integer(nu, |v| y_reflection(v, x)).unwrap(),
        }
    }

    #[test]
    fn negative_orders() {
        let x = 3.0;
        assert!(close(bessel(BesselKind::J, -2.0, x).unwrap(), bessel(BesselKind::J, 2.0, x).unwrap(), 1e-15));
        assert!(close(bessel(BesselKind::J, -1.0, x).unwrap(), -bessel(BesselKind::J, 1.0, x).unwrap(), 1e-15));
        assert!(close(bessel(BesselKind::K, -1.3, x).unwrap(), bessel(BesselKind::K, 1.3, x).unwrap(), 1e-15));
        // Y_(-1/2) = J_(1/2).
        assert!(close(bessel(BesselKind::Y, -0.5, x).unwrap(), bessel(BesselKind::J, 0.5, x).unwrap(), 1e-12));
    }

    #[test]
    fn order_just_off_an_integer() {
        let a = bessel(BesselKind::Y, 1.0, 2.0).unwrap();
        let b = bessel(BesselKind::Y, 1.0 + 1e-7, 2.0).unwrap();
        assert!((a - b).abs() < 1e-6);
        assert!((a - b).abs() > 1e-9);
    }

    #[test]
    fn domain_is_enforced() {
        assert!(bessel(BesselKind::J, 0.0, 0.0).is_err());
        assert!(bessel(BesselKind::K, 0.0, 31.0).is_err());
        assert!(bessel(BesselKind::I, 11.0, 1.0).is_err());
    }
}
