//! Registry of closed-form identities, each paired with a brute-force oracle.
//!
//! The left-hand side of every identity is evaluated only by direct
//! summation or quadrature. The right-hand side is the closed form. Keeping
//! the two apart means a failing check points at one side.
//!
//! Three published forms do not survive their oracle and are replaced by
//! corrected forms here; [`published_variant`] evaluates the form as printed
//! so the discrepancy stays measurable.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::hyper::{f32_112_22, f32_at_unity, pfq, HypergeometricSpec};
use crate::meijerg::{meijer_g, MeijerGSpec};
use crate::paramderiv::bessel_dnu_closed;
use crate::series::{integrate, sum_series_from, sum_slow_series, SeriesResult};
use crate::specfun::{
    bessel, beta, cos_pi, digamma, gamma, inc_beta, is_nonpositive_integer, lerch_phi, rgamma, sin_pi, BesselKind,
    EULER_GAMMA,
};
use crate::{re, Complex};

const SERIES_TOL: f64 = 1e-17;
const SERIES_MAX_TERMS: usize = 200_000;
const SLOW_TOL: f64 = 1e-9;
const SLOW_MAX_TERMS: usize = 1 << 20;
const QUAD_TOL: f64 = 1e-13;
const CLOSED_TOL: f64 = 1e-16;

/// Default pass threshold on the relative residual.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Threshold for identities that depend on Meijer-G or on sums at unit argument.
pub const RELAXED_TOL: f64 = 1e-5;

macro_rules! identities {
    ($($variant:ident => $name:literal, [$($param:literal),*], $tol:expr, $desc:literal;)*) => {
        /// One identity of the registry.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub enum IdentityId {
            $(#[serde(rename = $name)] $variant,)*
        }

        impl IdentityId {
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$variant,)*];

            /// Registry key, for example `SUM_B_C`.
            pub fn name(self) -> &'static str {
                match self { $(IdentityId::$variant => $name,)* }
            }

            /// Parameter names a point for this identity must define.
            pub fn param_names(self) -> &'static [&'static str] {
                match self { $(IdentityId::$variant => &[$($param),*],)* }
            }

            /// Pass threshold used by the default suites.
            pub fn default_tol(self) -> f64 {
                match self { $(IdentityId::$variant => $tol,)* }
            }

            /// The identity written out, left-hand side = right-hand side.
            pub fn description(self) -> &'static str {
                match self { $(IdentityId::$variant => $desc,)* }
            }
        }
    };
}

identities! {
    DaIncbeta => "DA_INCBETA", ["a", "b", "z"], DEFAULT_TOL,
        "int_0^z t^(a-1) (1-t)^(b-1) ln t dt = ln z B_z(a,b) - z^a/a^2 3F2(1-b,a,a; a+1,a+1; z)";
    DbIncbeta => "DB_INCBETA", ["a", "b", "z"], DEFAULT_TOL,
        "int_0^z t^(a-1) (1-t)^(b-1) ln(1-t) dt = (1-z)^b/b^2 3F2(1-a,b,b; b+1,b+1; 1-z) - ln(1-z) B_(1-z)(b,a) - B(a,b) [psi(a+b) - psi(b)]";
    LogIntegral => "LOG_INTEGRAL", ["alpha", "z"], DEFAULT_TOL,
        "int_0^z u^alpha ln u / (1-u^2) du = (1/2) ln z B_(z^2)((1+alpha)/2, 0) - z^(alpha+1)/4 Phi(z^2, 2, (1+alpha)/2)";
    F32Unity => "F32_UNITY", ["alpha", "beta"], RELAXED_TOL,
        "3F2(alpha,beta,beta; beta+1,beta+1; 1) = beta^2 B(1-alpha,beta) [psi(1+beta-alpha) - psi(beta)]";
    SumBC => "SUM_B_C", ["b", "c", "z"], DEFAULT_TOL,
        "sum (b)_k/(c)_k psi(b+k) z^k = (c-1) z^(1-c) { 3F2(2-c,s,s; s+1,s+1; 1-z)/s^2 + (1-z)^(c-b-1) [(psi(s) - ln(1-z)) B(s,c-1) - psi(b) B_(1-z)(s,c-1)] }, s = b-c+1";
    SumBCUnit => "SUM_B_C_UNIT", ["b", "c"], RELAXED_TOL,
        "sum (b)_k/(c)_k psi(b+k) = (c-1)/(c-b-1) [1/(c-b-1) + psi(b)]";
    SumB => "SUM_B", ["b", "z"], DEFAULT_TOL,
        "sum_(k>=1) psi(b+k) z^k = (b-1) z^(1-b) 3F2(1,1,2-b; 2,2; 1-z) + z^(1-b)/(z-1) [gamma + ln(1-z) + psi(b)] + psi(b) z/(1-z)";
    SumBMiller => "SUM_B_MILLER", ["b", "z"], DEFAULT_TOL,
        "sum_(k>=1) psi(b+k) z^k = z/(1-z) [psi(b) + B_z(b,0)/z^b]";
    F32_112 => "F32_112", ["a", "z"], DEFAULT_TOL,
        "3F2(1,1,a; 2,2; z) = [psi(2-a) + gamma + ln z + B_(1-z)(2-a,0)] / ((1-a) z)";
    SumABB1 => "SUM_A_B_B1", ["a", "b", "z"], DEFAULT_TOL,
        "sum (a)_k (b)_k/(k! (b+1)_k) psi(a+k) z^k = b z^(-b) { [ln(1-z) - psi(a)] B_(1-z)(1-a,b) + [psi(1+b-a) - pi cot(pi a)] B(b,1-a) - (1-z)^(1-a)/(1-a)^2 3F2(1-b,1-a,1-a; 2-a,2-a; 1-z) }";
    SumABB1Unit => "SUM_A_B_B1_UNIT", ["a", "b"], RELAXED_TOL,
        "sum (a)_k (b)_k/(k! (b+1)_k) psi(a+k) = b B(b,1-a) [psi(1+b-a) - pi cot(pi a)]";
    SumAK1 => "SUM_A_K1", ["a", "z"], DEFAULT_TOL,
        "sum (a)_k/(k+1)! psi(a+k) z^k = { (1-z)^(1-a) [ln(1-z) - psi(a) + 1/(a-1)] + psi(2-a) - pi cot(pi a) } / ((1-a) z)";
    GaussPsi => "GAUSS_PSI", ["a", "b", "c"], DEFAULT_TOL,
        "sum (a)_k (b)_k/(k! (c)_k) psi(b+k) = Gamma(c) Gamma(c-a-b)/(Gamma(c-b) Gamma(c-a)) [psi(c-b) - psi(c-a-b) + psi(b)]";
    SumJ => "SUM_J", ["b", "z"], RELAXED_TOL,
        "sum (-z)^k psi(k+b)/(k! (b)_k) = z^(-(1+b)/2)/(8 Gamma(b)) { Gamma(b)^2 J_(b-1)(2 sqrt z) [sqrt(pi) (b-1) G^{3,0}_{2,4}(4z | 3/2,2; 1,1,b,2-b) + 4z ln z] - 4 pi z^b Y_(b-1)(2 sqrt z) 2F3(b-1,b-1/2; b,b,2b-1; -4z) }";
    SumI => "SUM_I", ["b", "z"], RELAXED_TOL,
        "sum z^k psi(k+b)/(k! (b)_k) = z^(-(1+b)/2)/(8 sqrt(pi) Gamma(b)) { Gamma(b)^2 I_(b-1)(2 sqrt z) [(b-1) G^{3,1}_{2,4}(4z | 3/2,2; 1,1,b,2-b) + 4 sqrt(pi) z ln z] + 8 sqrt(pi) z^b K_(b-1)(2 sqrt z) 2F3(b-1,b-1/2; b,b,2b-1; 4z) }";
    SumJPlusI => "SUM_J_PLUS_I", ["b", "z"], RELAXED_TOL,
        "sum z^k psi(2k+b)/(k! (1/2)_k (b/2)_k ((b+1)/2)_k) = Gamma(b)/(2^b z^((b-1)/4)) { ln(2 z^(1/4)) [J_(b-1)(w) + I_(b-1)(w)] - dJ_(b-1)(w)/db - dI_(b-1)(w)/db }, w = 4 z^(1/4)";
    SumJMinusI => "SUM_J_MINUS_I", ["b", "z"], RELAXED_TOL,
        "sum z^k psi(2k+b)/(k! (3/2)_k (b/2)_k ((b+1)/2)_k) = Gamma(b)/(2^(b+1) z^(b/4)) { ln(2 z^(1/4)) [I_(b-2)(w) - J_(b-2)(w)] - dI_(b-2)(w)/db + dJ_(b-2)(w)/db }, w = 4 z^(1/4)";
}

impl IdentityId {
    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|id| id.name() == name)
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Named parameter values for one evaluation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamPoint(pub BTreeMap<String, Complex>);

impl ParamPoint {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a point from real values.
    pub fn real(pairs: &[(&str, f64)]) -> Self {
        Self(pairs.iter().map(|(k, v)| (k.to_string(), re(*v))).collect())
    }

    pub fn with(mut self, name: &str, value: Complex) -> Self {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn get(&self, name: &str) -> Result<Complex> {
        self.0.get(name).copied().ok_or_else(|| Error::InvalidInput(format!("missing parameter `{name}`")))
    }

    fn real_param(&self, name: &str) -> Result<f64> {
        let v = self.get(name)?;
        if v.im != 0.0 {
            return Err(Error::InvalidInput(format!("parameter `{name}` must be real")));
        }
        Ok(v.re)
    }
}

/// Formats a complex value as `re` or `re+imi`, with the shortest round-trip digits.
pub fn format_complex(z: Complex) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={}", format_complex(*v))).collect();
        f.write_str(&parts.join(" "))
    }
}

/// A value together with the number of terms or integrand evaluations that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluated {
    pub value: Complex,
    pub terms: usize,
}

impl Evaluated {
    fn closed(value: Complex) -> Self {
        Self { value, terms: 0 }
    }
}

/// Outcome of comparing the two sides of an identity at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub id: IdentityId,
    pub params: ParamPoint,
    pub lhs: Complex,
    pub rhs: Complex,
    pub abs_err: f64,
    /// |lhs - rhs| / (1 + |rhs|).
    pub rel_err: f64,
    pub tol: f64,
    pub pass: bool,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    /// Set when either side could not be evaluated; `pass` is then false.
    pub error: Option<String>,
}

/// Relative residual |lhs - rhs| / (1 + |rhs|) used by every check.
pub fn relative_residual(lhs: Complex, rhs: Complex) -> f64 {
    (lhs - rhs).norm() / (1.0 + rhs.norm())
}

/// Evaluates both sides and records the verdict; evaluation errors become failed rows.
pub fn check_identity(id: IdentityId, p: &ParamPoint, tol: f64) -> IdentityCheck {
    let nan = Complex::new(f64::NAN, f64::NAN);
    match identity_lhs(id, p).and_then(|l| identity_rhs(id, p).map(|r| (l, r))) {
        Ok((l, r)) => {
            let abs_err = (l.value - r.value).norm();
            let rel_err = relative_residual(l.value, r.value);
            IdentityCheck {
                id,
                params: p.clone(),
                lhs: l.value,
                rhs: r.value,
                abs_err,
                rel_err,
                tol,
                pass: rel_err <= tol,
                lhs_terms: l.terms,
                rhs_terms: r.terms,
                error: None,
            }
        }
        Err(e) => IdentityCheck {
            id,
            params: p.clone(),
            lhs: nan,
            rhs: nan,
            abs_err: f64::NAN,
            rel_err: f64::NAN,
            tol,
            pass: false,
            lhs_terms: 0,
            rhs_terms: 0,
            error: Some(e.to_string()),
        },
    }
}

fn converged(r: SeriesResult, what: &'static str) -> Result<Evaluated> {
    if !r.converged {
        return Err(Error::NonConvergence { what, terms: r.terms_used });
    }
    Ok(Evaluated { value: r.value, terms: r.terms_used })
}

/// Terms to take before the stopping rule may fire, past every negative parameter.
fn guard(params: &[Complex]) -> usize {
    params.iter().filter(|a| a.re < 0.0).map(|a| (-a.re).ceil() as usize + 2).max().unwrap_or(0) + 2
}

/// Sums `w_k psi(shift + k)` where `w_0 = 1` and `w_(k+1) = w_k ratio(k)`.
fn psi_series<R: Fn(usize) -> Complex>(ratio: R, shift: Complex, min_terms: usize, unit: bool) -> Result<Evaluated> {
    let mut w = re(1.0);
    let mut err = None;
    let term = |k: usize| {
        let t = match digamma(shift + k as f64) {
            Ok(p) => w * p,
            Err(e) => {
                err.get_or_insert(e);
                re(0.0)
            }
        };
        w *= ratio(k);
        t
    };
    let r = if unit {
        sum_slow_series(term, SLOW_TOL, SLOW_MAX_TERMS)
    } else {
        sum_series_from(term, SERIES_TOL, SERIES_MAX_TERMS, min_terms)
    };
    if let Some(e) = err {
        return Err(e);
    }
    converged(r, "identity series")
}

/// int_0^z t^(a-1) g(t) dt. For a < 1 the substitution t = z w^(2/a) absorbs
/// the endpoint singularity: t^(a-1) dt = (2 z^a / a) w dw.
fn quad_power<G: Fn(f64) -> f64>(a: f64, g: G, z: f64) -> Result<Evaluated> {
    let r = if a < 1.0 {
        let e = 2.0 / a;
        let scale = 2.0 * z.powf(a) / a;
        integrate(|w| if w == 0.0 { re(0.0) } else { re(scale * w * g(z * w.powf(e))) }, 0.0, 1.0, QUAD_TOL)?
    } else {
        integrate(|t| re(t.powf(a - 1.0) * g(t)), 0.0, z, QUAD_TOL)?
    };
    Ok(Evaluated { value: r.value, terms: r.evaluations })
}

fn hyp(num: &[Complex], den: &[Complex], z: Complex) -> Result<(Complex, usize)> {
    let r = pfq(&HypergeometricSpec::new(num, den, z), CLOSED_TOL)?;
    Ok((r.value, r.terms_used))
}

fn cot_pi(a: Complex) -> Complex {
    if a.im == 0.0 {
        return re(cos_pi(a.re) / sin_pi(a.re));
    }
    let x = a * PI;
    x.cos() / x.sin()
}

fn need_disc(id: IdentityId, z: Complex) -> Result<()> {
    if z.norm() >= 1.0 {
        return domain("identity", format!("{id} needs |z| < 1"));
    }
    Ok(())
}

fn need_open_unit(id: IdentityId, z: f64) -> Result<()> {
    if !(z > 0.0 && z < 1.0) {
        return domain("identity", format!("{id} needs 0 < z < 1"));
    }
    Ok(())
}

fn need_non_integer(what: &str, a: Complex) -> Result<()> {
    if a.im == 0.0 && a.re.fract() == 0.0 {
        return domain("identity", format!("{what} = {} must not be an integer", a.re));
    }
    Ok(())
}

fn bessel_point(id: IdentityId, p: &ParamPoint) -> Result<(f64, f64)> {
    let b = p.real_param("b")?;
    let z = p.real_param("z")?;
    if !(b > 0.0) {
        return domain("identity", format!("{id} needs b > 0"));
    }
    if !(z > 0.0 && z <= 6.25) {
        return domain("identity", format!("{id} needs 0 < z <= 6.25"));
    }
    Ok((b, z))
}

/// Brute-force evaluation of the left-hand side: direct summation or quadrature only.
pub fn identity_lhs(id: IdentityId, p: &ParamPoint) -> Result<Evaluated> {
    use IdentityId::*;
    match id {
        DaIncbeta | DbIncbeta => {
            let (a, b, z) = (p.real_param("a")?, p.real_param("b")?, p.real_param("z")?);
            need_open_unit(id, z)?;
            if !(a > 0.0) {
                return domain("identity", format!("{id} needs a > 0"));
            }
            if id == DaIncbeta {
                quad_power(a, |t| (1.0 - t).powf(b - 1.0) * t.ln(), z)
            } else {
                quad_power(a, |t| (1.0 - t).powf(b - 1.0) * (-t).ln_1p(), z)
            }
        }
        LogIntegral => {
            let (al, z) = (p.real_param("alpha")?, p.real_param("z")?);
            need_open_unit(id, z)?;
            if !(al > -1.0) {
                return domain("identity", "LOG_INTEGRAL needs alpha > -1");
            }
            quad_power(al + 1.0, |u| u.ln() / (1.0 - u * u), z)
        }
        F32Unity => {
            let (al, be) = (p.get("alpha")?, p.get("beta")?);
            let r = pfq(&HypergeometricSpec::new(&[al, be, be], &[be + 1.0, be + 1.0], re(1.0)), SLOW_TOL)?;
            Ok(Evaluated { value: r.value, terms: r.terms_used })
        }
        SumBC | SumBCUnit => {
            let (b, c) = (p.get("b")?, p.get("c")?);
            let z = if id == SumBC { p.get("z")? } else { re(1.0) };
            if id == SumBC {
                need_disc(id, z)?;
            } else if (c - b).re <= 1.0 {
                return domain("identity", "SUM_B_C_UNIT needs Re(c - b) > 1");
            }
            psi_series(|k| (b + k as f64) / (c + k as f64) * z, b, guard(&[b, c]), id == SumBCUnit)
        }
        SumB | SumBMiller => {
            let (b, z) = (p.get("b")?, p.get("z")?);
            need_disc(id, z)?;
            // Sum from k = 1: the weight starts at z.
            let r = psi_series(|_| z, b + 1.0, guard(&[b]), false)?;
            Ok(Evaluated { value: r.value * z, terms: r.terms })
        }
        F32_112 => {
            let (a, z) = (p.get("a")?, p.get("z")?);
            need_disc(id, z)?;
            let (v, n) = hyp(&[re(1.0), re(1.0), a], &[re(2.0), re(2.0)], z)?;
            Ok(Evaluated { value: v, terms: n })
        }
        SumABB1 | SumABB1Unit => {
            let (a, b) = (p.get("a")?, p.get("b")?);
            let z = if id == SumABB1 { p.get("z")? } else { re(1.0) };
            if id == SumABB1 {
                need_disc(id, z)?;
            } else if a.re >= 1.0 {
                return domain("identity", "SUM_A_B_B1_UNIT needs Re a < 1");
            }
            let ratio = |k: usize| {
                let k = k as f64;
                (a + k) * (b + k) / ((k + 1.0) * (b + 1.0 + k)) * z
            };
            psi_series(ratio, a, guard(&[a, b]), id == SumABB1Unit)
        }
        SumAK1 => {
            let (a, z) = (p.get("a")?, p.get("z")?);
            need_disc(id, z)?;
            // (a)_k / (k+1)!: the k = 0 weight is 1.
            psi_series(|k| (a + k as f64) * z / (k as f64 + 2.0), a, guard(&[a]), false)
        }
        GaussPsi => {
            let (a, b, c) = (p.get("a")?, p.get("b")?, p.get("c")?);
            if (c - a - b).re <= 0.0 {
                return domain("identity", "GAUSS_PSI needs Re(c - a - b) > 0");
            }
            let ratio = |k: usize| {
                let k = k as f64;
                (a + k) * (b + k) / ((k + 1.0) * (c + k))
            };
            psi_series(ratio, b, guard(&[a, b, c]), true)
        }
        SumJ | SumI => {
            let (b, z) = bessel_point(id, p)?;
            let s = if id == SumJ { -z } else { z };
            psi_series(|k| re(s / ((k as f64 + 1.0) * (b + k as f64))), re(b), guard(&[re(b)]), false)
        }
        SumJPlusI | SumJMinusI => {
            let (b, z) = bessel_point(id, p)?;
            let h = if id == SumJPlusI { 0.5 } else { 1.5 };
            let mut w = 1.0;
            let mut err = None;
            let r = sum_series_from(
                |k| {
                    let kf = k as f64;
                    let t = match digamma(re(2.0 * kf + b)) {
                        Ok(p) => p * w,
                        Err(e) => {
                            err.get_or_insert(e);
                            re(0.0)
                        }
                    };
                    w *= z / ((kf + 1.0) * (h + kf) * (0.5 * b + kf) * (0.5 * (b + 1.0) + kf));
                    t
                },
                SERIES_TOL,
                SERIES_MAX_TERMS,
                4,
            );
            if let Some(e) = err {
                return Err(e);
            }
            converged(r, "identity series")
        }
    }
}

/// The closed form, with the corrections described in [`published_variant`] applied.
pub fn identity_rhs(id: IdentityId, p: &ParamPoint) -> Result<Evaluated> {
    use IdentityId::*;
    let one = re(1.0);
    match id {
        DaIncbeta => {
            let (a, b, z) = (p.get("a")?, p.get("b")?, p.get("z")?);
            let (f, n) = hyp(&[one - b, a, a], &[a + 1.0, a + 1.0], z)?;
            Ok(Evaluated { value: z.ln() * inc_beta(z, a, b)? - z.powc(a) / (a * a) * f, terms: n })
        }
        DbIncbeta => {
            let (a, b, z) = (p.get("a")?, p.get("b")?, p.get("z")?);
            let w = one - z;
            let (f, n) = hyp(&[one - a, b, b], &[b + 1.0, b + 1.0], w)?;
            let v = w.powc(b) / (b * b) * f
                - w.ln() * inc_beta(w, b, a)?
                - beta(a, b)? * (digamma(a + b)? - digamma(b)?);
            Ok(Evaluated { value: v, terms: n })
        }
        LogIntegral => {
            let (al, z) = (p.get("alpha")?, p.get("z")?);
            let l = (one + al) * 0.5;
            let z2 = z * z;
            let v = 0.5 * z.ln() * inc_beta(z2, l, re(0.0))? - z.powc(al + 1.0) / 4.0 * lerch_phi(z2, re(2.0), l)?;
            Ok(Evaluated::closed(v))
        }
        F32Unity => Ok(Evaluated::closed(f32_at_unity(p.get("alpha")?, p.get("beta")?)?)),
        SumBC => sum_b_c_rhs(p, -1.0),
        SumBCUnit => {
            let (b, c) = (p.get("b")?, p.get("c")?);
            let d = c - b - 1.0;
            Ok(Evaluated::closed((c - 1.0) / d * (d.inv() + digamma(b)?)))
        }
        SumB => sum_b_rhs(p, true),
        SumBMiller => {
            let (b, z) = (p.get("b")?, p.get("z")?);
            if z.norm() == 0.0 {
                return domain("identity", "SUM_B_MILLER closed form needs z != 0");
            }
            let v = z / (one - z) * (digamma(b)? + inc_beta(z, b, re(0.0))? / z.powc(b));
            Ok(Evaluated::closed(v))
        }
        F32_112 => Ok(Evaluated::closed(f32_112_22(p.get("a")?, p.get("z")?)?)),
        SumABB1 => {
            let (a, b, z) = (p.get("a")?, p.get("b")?, p.get("z")?);
            need_non_integer("a", a)?;
            if z.norm() == 0.0 {
                return domain("identity", "SUM_A_B_B1 closed form needs z != 0");
            }
            let w = one - z;
            let oa = one - a;
            let (f, n) = hyp(&[one - b, oa, oa], &[oa + 1.0, oa + 1.0], w)?;
            let v = b
                * z.powc(-b)
                * ((w.ln() - digamma(a)?) * inc_beta(w, oa, b)?
                    + (digamma(one + b - a)? - PI * cot_pi(a)) * beta(b, oa)?
                    - w.powc(oa) / (oa * oa) * f);
            Ok(Evaluated { value: v, terms: n })
        }
        SumABB1Unit => {
            let (a, b) = (p.get("a")?, p.get("b")?);
            need_non_integer("a", a)?;
            Ok(Evaluated::closed(b * beta(b, one - a)? * (digamma(one + b - a)? - PI * cot_pi(a))))
        }
        SumAK1 => {
            let (a, z) = (p.get("a")?, p.get("z")?);
            need_non_integer("a", a)?;
            if z.norm() == 0.0 {
                return domain("identity", "SUM_A_K1 closed form needs z != 0");
            }
            let w = one - z;
            let v = (w.powc(one - a) * (w.ln() - digamma(a)? + (a - 1.0).inv()) + digamma(re(2.0) - a)?
                - PI * cot_pi(a))
                / ((one - a) * z);
            Ok(Evaluated::closed(v))
        }
        GaussPsi => {
            let (a, b, c) = (p.get("a")?, p.get("b")?, p.get("c")?);
            let g = gamma(c)? * gamma(c - a - b)? * rgamma(c - b) * rgamma(c - a);
            Ok(Evaluated::closed(g * (digamma(c - b)? - digamma(c - a - b)? + digamma(b)?)))
        }
        SumJ | SumI => bessel_sum_rhs(id, p),
        SumJPlusI | SumJMinusI => {
            let (b, z) = bessel_point(id, p)?;
            let q = z.powf(0.25);
            let w = 4.0 * q;
            let l = (2.0 * q).ln();
            let g = gamma(re(b))?.re;
            let v = if id == SumJPlusI {
                let nu = b - 1.0;
                let j = bessel(BesselKind::J, nu, w)?;
                let i = bessel(BesselKind::I, nu, w)?;
                let dj = bessel_dnu_closed(BesselKind::J, nu, w)?;
                let di = bessel_dnu_closed(BesselKind::I, nu, w)?;
                g / (2f64.powf(b) * z.powf((b - 1.0) / 4.0)) * (l * (j + i) - dj - di)
            } else {
                let nu = b - 2.0;
                let j = bessel(BesselKind::J, nu, w)?;
                let i = bessel(BesselKind::I, nu, w)?;
                let dj = bessel_dnu_closed(BesselKind::J, nu, w)?;
                let di = bessel_dnu_closed(BesselKind::I, nu, w)?;
                g / (2f64.powf(b + 1.0) * z.powf(b / 4.0)) * (l * (i - j) - di + dj)
            };
            Ok(Evaluated::closed(re(v)))
        }
    }
}

/// SUM_B_C closed form; `sign` multiplies the psi(b) B_(1-z)(s, c-1) term (-1 is correct, +1 as published).
fn sum_b_c_rhs(p: &ParamPoint, sign: f64) -> Result<Evaluated> {
    let (b, c, z) = (p.get("b")?, p.get("c")?, p.get("z")?);
    let one = re(1.0);
    let s = b - c + 1.0;
    if s.norm() == 0.0 {
        return domain("identity", "SUM_B_C closed form needs c != b + 1");
    }
    if let Some(n) = is_nonpositive_integer(s) {
        return crate::error::pole("SUM_B_C: B(b-c+1, c-1)", -(n as f64));
    }
    if let Some(n) = is_nonpositive_integer(c - 1.0) {
        return crate::error::pole("SUM_B_C: B(b-c+1, c-1)", -(n as f64));
    }
    if z.norm() == 0.0 {
        return domain("identity", "SUM_B_C closed form needs z != 0");
    }
    let w = one - z;
    let (f, n) = hyp(&[re(2.0) - c, s, s], &[s + 1.0, s + 1.0], w)?;
    let bracket =
        (digamma(s)? - w.ln()) * beta(s, c - 1.0)? + sign * digamma(b)? * inc_beta(w, s, c - 1.0)?;
    let v = (c - 1.0) * z.powc(one - c) * (f / (s * s) + w.powc(c - b - 1.0) * bracket);
    Ok(Evaluated { value: v, terms: n })
}

/// SUM_B closed form, with or without the psi(b) z/(1-z) term missing from the published version.
fn sum_b_rhs(p: &ParamPoint, corrected: bool) -> Result<Evaluated> {
    let (b, z) = (p.get("b")?, p.get("z")?);
    let one = re(1.0);
    if z.norm() == 0.0 {
        return domain("identity", "SUM_B closed form needs z != 0");
    }
    let (f, n) = hyp(&[one, one, re(2.0) - b], &[re(2.0), re(2.0)], one - z)?;
    let zb = z.powc(one - b);
    let psi = digamma(b)?;
    let mut v = (b - 1.0) * zb * f + zb / (z - 1.0) * (EULER_GAMMA + (one - z).ln()) + zb / (z - 1.0) * psi;
    if corrected {
        v += psi * z / (one - z);
    }
    Ok(Evaluated { value: v, terms: n })
}

fn bessel_sum_rhs(id: IdentityId, p: &ParamPoint) -> Result<Evaluated> {
    let (b, z) = bessel_point(id, p)?;
    let s = 2.0 * z.sqrt();
    let g = gamma(re(b))?.re;
    let f = hyp(&[re(b - 1.0), re(b - 0.5)], &[re(b), re(b), re(2.0 * b - 1.0)], re(if id == IdentityId::SumJ { -4.0 * z } else { 4.0 * z }))?.0.re;
    // The Meijer-G term carries a factor (b - 1).
    let meijer = |n: usize| -> Result<f64> {
        if b == 1.0 {
            return Ok(0.0);
        }
        meijer_g(&MeijerGSpec::new(3, n, &[1.5, 2.0], &[1.0, 1.0, b, 2.0 - b], 4.0 * z), CLOSED_TOL)
    };
    let lead = z.powf(-(1.0 + b) / 2.0);
    let spi = PI.sqrt();
    let v = if id == IdentityId::SumJ {
        let j = bessel(BesselKind::J, b - 1.0, s)?;
        let y = bessel(BesselKind::Y, b - 1.0, s)?;
        lead / (8.0 * g) * (g * g * j * (spi * (b - 1.0) * meijer(0)? + 4.0 * z * z.ln()) - 4.0 * PI * z.powf(b) * y * f)
    } else {
        let i = bessel(BesselKind::I, b - 1.0, s)?;
        let k = bessel(BesselKind::K, b - 1.0, s)?;
        lead / (8.0 * spi * g)
            * (g * g * i * ((b - 1.0) * meijer(1)? + 4.0 * spi * z * z.ln()) + 8.0 * spi * z.powf(b) * k * f)
    };
    Ok(Evaluated::closed(re(v)))
}

/// Both sides of an identity exactly as published, for the identities whose
/// published form is corrected in [`identity_lhs`] or [`identity_rhs`].
///
/// * `SUM_B_C`: the published closed form adds psi(b) B_(1-z)(b-c+1, c-1) where it must subtract it.
/// * `SUM_B`: the published closed form omits psi(b) z/(1-z).
/// * `SUM_A_B_B1_UNIT`: the published sum weights by psi(b+k) where the closed form belongs to psi(a+k).
///
/// Returns `None` for every other identity.
pub fn published_variant(id: IdentityId, p: &ParamPoint) -> Option<Result<(Complex, Complex)>> {
    let pair = match id {
        IdentityId::SumBC => identity_lhs(id, p).and_then(|l| sum_b_c_rhs(p, 1.0).map(|r| (l.value, r.value))),
        IdentityId::SumB => identity_lhs(id, p).and_then(|l| sum_b_rhs(p, false).map(|r| (l.value, r.value))),
        IdentityId::SumABB1Unit => (|| {
            let (a, b) = (p.get("a")?, p.get("b")?);
            let ratio = |k: usize| {
                let k = k as f64;
                (a + k) * (b + k) / ((k + 1.0) * (b + 1.0 + k))
            };
            let l = psi_series(ratio, b, guard(&[a, b]), true)?;
            Ok((l.value, identity_rhs(id, p)?.value))
        })(),
        _ => return None,
    };
    Some(pair)
}

/// The fixed parameter grid each identity is checked on by default.
pub fn default_grid(id: IdentityId) -> Vec<ParamPoint> {
    use IdentityId::*;
    let grid3 = |names: [&str; 3], xs: &[f64], ys: &[f64], zs: &[f64]| -> Vec<ParamPoint> {
        let mut out = Vec::new();
        for &x in xs {
            for &y in ys {
                for &z in zs {
                    out.push(ParamPoint::real(&[(names[0], x), (names[1], y), (names[2], z)]));
                }
            }
        }
        out
    };
    let grid2 = |names: [&str; 2], xs: &[f64], ys: &[f64]| -> Vec<ParamPoint> {
        let mut out = Vec::new();
        for &x in xs {
            for &y in ys {
                out.push(ParamPoint::real(&[(names[0], x), (names[1], y)]));
            }
        }
        out
    };
    let pairs = |names: [&str; 2], xs: &[(f64, f64)]| -> Vec<ParamPoint> {
        xs.iter().map(|&(x, y)| ParamPoint::real(&[(names[0], x), (names[1], y)])).collect()
    };
    let complex_z = Complex::from_polar(0.3, PI / 4.0);
    match id {
        DaIncbeta => grid3(["a", "b", "z"], &[0.7, 2.0], &[0.6, 3.0], &[0.3, 0.5, 0.9]),
        DbIncbeta => grid3(["a", "b", "z"], &[0.7, 2.5], &[0.6, 1.7], &[0.2, 0.4, 0.8]),
        LogIntegral => grid2(["alpha", "z"], &[-0.5, 0.0, 1.0, 2.5], &[0.25, 0.5, 0.9]),
        F32Unity => grid2(["alpha", "beta"], &[-0.5, 0.3], &[0.7, 1.2]),
        SumBC => {
            let mut g: Vec<ParamPoint> = grid3(["b", "c", "z"], &[0.7, 1.4, 2.2], &[1.3, 2.6], &[0.3, 0.7])
                .into_iter()
                .filter(|p| (p.get("c").unwrap() - p.get("b").unwrap() - 1.0).norm() > 1e-12)
                .collect();
            for &b in &[0.7, 1.4, 2.2] {
                for &c in &[1.3, 2.6] {
                    g.push(ParamPoint::real(&[("b", b), ("c", c)]).with("z", complex_z));
                }
            }
            g
        }
        SumBCUnit => pairs(["b", "c"], &[(0.7, 3.1), (1.4, 3.6), (0.5, 2.8), (2.2, 4.5)]),
        SumB | SumBMiller => {
            let mut g = grid2(["b", "z"], &[0.7, 1.0, 1.4, 2.5], &[0.3, 0.7]);
            for &b in &[0.7, 1.4] {
                g.push(ParamPoint::real(&[("b", b)]).with("z", complex_z));
            }
            g
        }
        F32_112 => grid2(["a", "z"], &[-0.5, 0.4, 1.5], &[0.25, 0.6, 0.75]),
        SumABB1 => grid3(["a", "b", "z"], &[-0.4, 0.3, 1.6], &[0.5, 2.0], &[0.3, 0.7]),
        SumABB1Unit => pairs(["a", "b"], &[(0.3, 1.2), (-0.5, 0.7), (0.5, 2.0)]),
        SumAK1 => grid2(["a", "z"], &[-0.3, 0.5, 1.7], &[0.3, 0.5, 0.8]),
        GaussPsi => {
            let pts = [(0.5, 0.7, 3.0), (1.0, 0.5, 3.2), (-0.3, 1.2, 2.9), (0.2, 0.4, 2.5)];
            pts.iter().map(|&(a, b, c)| ParamPoint::real(&[("a", a), ("b", b), ("c", c)])).collect()
        }
        SumJ | SumI | SumJPlusI | SumJMinusI => grid2(["b", "z"], &[1.0, 1.5, 2.0], &[0.25, 1.0, 4.0]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    fn pt(pairs: &[(&str, f64)]) -> ParamPoint {
        ParamPoint::real(pairs)
    }

    #[test]
    fn registry_is_closed_and_named() {
        assert_eq!(IdentityId::ALL.len(), 17);
        for &id in IdentityId::ALL {
            assert_eq!(IdentityId::from_name(id.name()), Some(id));
            for p in default_grid(id) {
                for name in id.param_names() {
                    assert!(p.get(name).is_ok(), "{id} point {p} lacks {name}");
                }
            }
        }
    }

    #[test]
    fn reference_values() {
        let v = identity_lhs(IdentityId::SumB, &pt(&[("b", 1.0), ("z", 0.5)])).unwrap().value.re;
        assert!((v - 0.8090786962183577).abs() < 1e-14);
        let v = identity_lhs(IdentityId::LogIntegral, &pt(&[("alpha", 1.0), ("z", 0.5)])).unwrap().value.re;
        assert!((v + 0.16661616847948008).abs() < 1e-12);
        let v = identity_rhs(IdentityId::LogIntegral, &pt(&[("alpha", 1.0), ("z", 0.5)])).unwrap().value.re;
        assert!((v + 0.16661616847948008).abs() < 1e-14);
        let v = identity_rhs(IdentityId::DaIncbeta, &pt(&[("a", 2.0), ("b", 3.0), ("z", 0.5)])).unwrap().value.re;
        assert!((v + 0.0783400294418024).abs() < 1e-14);
        let v = identity_rhs(IdentityId::GaussPsi, &pt(&[("a", 0.5), ("b", 0.7), ("c", 3.0)])).unwrap().value.re;
        assert!((v + 1.0869147085486731).abs() < 1e-14);
    }

    #[test]
    fn sum_b_c_at_zero_argument_is_psi_b() {
        let p = pt(&[("b", 1.4), ("c", 1.4)]).with("z", re(0.0));
        let v = identity_lhs(IdentityId::SumBC, &p).unwrap().value;
        assert!((v - digamma(re(1.4)).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn spot_checks_pass() {
        let cases = [
            (IdentityId::SumAK1, pt(&[("a", 0.5), ("z", 0.5)]), 1e-8),
            (IdentityId::SumJ, pt(&[("b", 1.5), ("z", 1.0)]), 1e-5),
            (IdentityId::DaIncbeta, pt(&[("a", 2.0), ("b", 3.0), ("z", 0.5)]), 1e-8),
        ];
        for (id, p, tol) in cases {
            let c = check_identity(id, &p, tol);
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn corrected_forms_pass_and_published_forms_do_not() {
        let p = pt(&[("b", 0.7), ("c", 2.6), ("z", 0.3)]);
        let (l, r) = published_variant(IdentityId::SumBC, &p).unwrap().unwrap();
        assert!(relative_residual(l, r) > 1e-3);
        assert!(check_identity(IdentityId::SumBC, &p, 1e-10).pass);
        let p = pt(&[("b", 1.4), ("z", 0.3)]);
        let (l, r) = published_variant(IdentityId::SumB, &p).unwrap().unwrap();
        assert!(relative_residual(l, r) > 1e-3);
        let p = pt(&[("a", 0.3), ("b", 1.2)]);
        let (l, r) = published_variant(IdentityId::SumABB1Unit, &p).unwrap().unwrap();
        assert!(relative_residual(l, r) > 1e-3);
        assert!(published_variant(IdentityId::SumJ, &p).is_none());
    }

    #[test]
    fn degenerate_sum_b_c_is_sum_b_plus_first_term() {
        for (b, z) in [(1.4, c64(0.3, 0.0)), (2.5, c64(0.2, 0.4))] {
            let p = ParamPoint::real(&[("b", b), ("c", b)]).with("z", z);
            let full = identity_rhs(IdentityId::SumBC, &p).unwrap().value;
            let q = ParamPoint::real(&[("b", b)]).with("z", z);
            let tail = identity_rhs(IdentityId::SumB, &q).unwrap().value;
            let first = digamma(re(b)).unwrap();
            assert!(relative_residual(full, tail + first) < 1e-9);
        }
    }

    #[test]
    fn errors_become_failed_rows() {
        let c = check_identity(IdentityId::SumBMiller, &pt(&[("b", 1.0), ("z", 1.5)]), 1e-8);
        assert!(!c.pass);
        assert!(c.error.is_some());
        let c = check_identity(IdentityId::SumB, &pt(&[("b", 1.0)]), 1e-8);
        assert!(c.error.unwrap().contains("missing parameter"));
    }

    #[test]
    fn every_default_grid_point_passes() {
        let mut failures = Vec::new();
        for &id in IdentityId::ALL {
            for p in default_grid(id) {
                let c = check_identity(id, &p, id.default_tol());
                if !c.pass {
                    failures.push(format!("{id} {p}: rel {:e} {:?}", c.rel_err, c.error));
                }
            }
        }
        assert!(failures.is_empty(), "{failures:#?}");
    }

    #[test]
    fn params_print_in_name_order() {
        let p = ParamPoint::real(&[("z", 0.3), ("b", 1.4)]).with("c", c64(2.0, -1.0));
        assert_eq!(p.to_string(), "b=1.4 c=2-1i z=0.3");
    }
}

