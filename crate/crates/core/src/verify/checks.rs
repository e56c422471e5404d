//! Checks of the parameter-derivative closed forms against their series oracles.
//!
//! Each check evaluates an oracle (direct series, or a central difference of
//! one) and a closed form at a named parameter point, like an identity does.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::identities::{Evaluated, ParamPoint};
use crate::paramderiv::{
    bessel_dnu_closed, bessel_dnu_series, ml_deriv_closed_int_alpha, ml_deriv_closed_reciprocal_alpha,
    ml_deriv_series, ml_table_closed, p_func, p_series, q_func, q_series, theta_filter, wright_dalpha_unit,
    wright_dbeta_unit, wright_deriv_closed_alpha1, wright_deriv_series, DerivTarget, MLParams, WrightParams,
};
use crate::specfun::{bessel, BesselKind};
use crate::{c64, re, Complex};

const BESSEL_TOL: f64 = 1e-5;
const UNIT_TOL: f64 = 1e-8;
const ML_TOL: f64 = 1e-7;
const LINK_TOL: f64 = 1e-5;
const Q_TOL: f64 = 1e-9;
const THETA_TOL: f64 = 1e-13;

macro_rules! aux_checks {
    ($($variant:ident => $name:literal, [$($param:literal),*], $tol:expr, $desc:literal;)*) => {
        /// A derivative closed form paired with its oracle.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
        pub enum AuxCheck {
            $(#[serde(rename = $name)] $variant,)*
        }

        impl AuxCheck {
            pub const ALL: &'static [AuxCheck] = &[$(AuxCheck::$variant,)*];

            pub fn name(self) -> &'static str {
                match self { $(AuxCheck::$variant => $name,)* }
            }

            pub fn param_names(self) -> &'static [&'static str] {
                match self { $(AuxCheck::$variant => &[$($param),*],)* }
            }

            pub fn default_tol(self) -> f64 {
                match self { $(AuxCheck::$variant => $tol,)* }
            }

            /// Oracle = closed form, in words.
            pub fn description(self) -> &'static str {
                match self { $(AuxCheck::$variant => $desc,)* }
            }
        }
    };
}

aux_checks! {
    DJnuClosed => "DJNU_CLOSED", ["nu", "x"], BESSEL_TOL,
        "dJ_nu(x)/dnu digamma series = (pi/2) [Y_nu (x/2)^(2nu)/Gamma(nu+1)^2 2F3 - nu J_nu/sqrt(pi) G^{3,0}_{2,4}(x^2)]";
    DInuClosed => "DINU_CLOSED", ["nu", "x"], BESSEL_TOL,
        "dI_nu(x)/dnu digamma series = -K_nu (x/2)^(2nu)/Gamma(nu+1)^2 2F3 + nu I_nu/(2 sqrt(pi)) G^{3,1}_{2,4}(x^2)";
    DJnuZero => "DJNU_ZERO", ["x"], UNIT_TOL,
        "dJ_nu(x)/dnu at nu = 0 digamma series = (pi/2) Y_0(x)";
    DInuZero => "DINU_ZERO", ["x"], UNIT_TOL,
        "dI_nu(x)/dnu at nu = 0 digamma series = -K_0(x)";
    WrightDbetaAlpha1 => "WRIGHT_DBETA_ALPHA1", ["beta", "z"], BESSEL_TOL,
        "dW_(1,beta)(z)/dbeta series = I/K/2F3/G^{3,1}_{2,4} closed form";
    WrightDalphaAlpha1 => "WRIGHT_DALPHA_ALPHA1", ["beta", "z"], BESSEL_TOL,
        "dW_(alpha,beta)(z)/dalpha at alpha = 1 series = I/K/2F3/1F2/G^{3,1}_{2,4}/G^{2,1}_{1,3} closed form";
    WrightDbetaUnit => "WRIGHT_DBETA_UNIT", ["z"], UNIT_TOL,
        "dW/dbeta at alpha = beta = 1 series = -(1/2) ln z I_0(2 sqrt z) - K_0(2 sqrt z)";
    WrightDalphaUnit => "WRIGHT_DALPHA_UNIT", ["z"], UNIT_TOL,
        "dW/dalpha at alpha = beta = 1 series = (1/2) {sqrt z [2 K_1(2 sqrt z) - ln z I_1(2 sqrt z)] - I_0(2 sqrt z)}";
    WrightDerivLink => "WRIGHT_DERIV_LINK", ["alpha", "beta", "z"], LINK_TOL,
        "dW/dalpha series = z d/dz (dW/dbeta) by central difference";
    MlDbetaInt => "ML_DBETA_INT", ["n", "beta", "z"], ML_TOL,
        "dE_(n,beta)(z)/dbeta series = -1/(n Gamma(beta)) sum_m Q(beta, z^(1/n) w_m)";
    MlDalphaInt => "ML_DALPHA_INT", ["n", "beta", "z"], ML_TOL,
        "dE_(alpha,beta)(z)/dalpha at alpha = n series = -z^(1/n)/(n^2 Gamma(beta)) sum_m w_m P(beta, z^(1/n) w_m)";
    MlTableDbeta => "ML_TABLE_DBETA", ["alpha", "beta", "z"], ML_TOL,
        "dE_(alpha,beta)(z)/dbeta series = elementary row for alpha, beta in {1, 2}";
    MlTableDalpha => "ML_TABLE_DALPHA", ["alpha", "beta", "z"], ML_TOL,
        "dE_(alpha,beta)(z)/dalpha series = elementary row for alpha, beta in {1, 2}";
    MlDbetaReciprocal => "ML_DBETA_RECIPROCAL", ["q", "beta", "z"], ML_TOL,
        "dE_(1/q,beta)(z)/dbeta series = -sum_h z^h Q(h/q + beta, z^q)/Gamma(h/q + beta)";
    MlDalphaReciprocal => "ML_DALPHA_RECIPROCAL", ["q", "beta", "z"], ML_TOL,
        "dE_(alpha,beta)(z)/dalpha at alpha = 1/q series = -sum_h z^h [h Q + q z^q P](h/q + beta, z^q)/Gamma(h/q + beta)";
    MlDerivLink => "ML_DERIV_LINK", ["alpha", "beta", "z"], LINK_TOL,
        "dE/dalpha series = z d/dz (dE/dbeta) by central difference";
    QClosed => "Q_CLOSED", ["a", "t"], Q_TOL,
        "sum t^k psi(k+a)/(a)_k = psi(a) + e^t [t^(1-a) psi(a) gamma(a,t) + t/a^2 2F2(a,a; a+1,a+1; -t)]";
    PClosed => "P_CLOSED", ["a", "t"], Q_TOL,
        "sum k t^(k-1) psi(k+a)/(a)_k = dQ(a,t)/dt closed form";
    ThetaFilter => "THETA_FILTER", ["n", "k"], THETA_TOL,
        "(1/n) sum_m exp(2 pi i m k/n) = [n divides k]";
}

impl AuxCheck {
    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|c| c.name() == name)
    }

    /// Fixed parameter grid.
    pub fn default_grid(self) -> Vec<ParamPoint> {
        use AuxCheck::*;
        match self {
            DJnuClosed | DInuClosed => product(&[("nu", &[1.2, 1.5, 2.3]), ("x", &[0.5, 1.0, 2.0])]),
            DJnuZero | DInuZero => product(&[("x", &[0.5, 1.0, 2.0])]),
            WrightDbetaAlpha1 | WrightDalphaAlpha1 => product(&[("beta", &[1.0, 1.5, 2.0]), ("z", &[0.25, 0.5, 1.0])]),
            WrightDbetaUnit | WrightDalphaUnit => product(&[("z", &[0.25, 0.5, 1.0, 2.0])]),
            WrightDerivLink => product(&[("alpha", &[0.5, 1.0, 1.5]), ("beta", &[1.0, 2.0]), ("z", &[0.5, 1.0])]),
            MlDbetaInt | MlDalphaInt => {
                product(&[("n", &[1.0, 2.0, 3.0]), ("beta", &[1.0, 2.0, 2.5]), ("z", &[0.5, 1.0, 2.0])])
            }
            MlTableDbeta | MlTableDalpha => {
                product(&[("alpha", &[1.0, 2.0]), ("beta", &[1.0, 2.0]), ("z", &[0.25, 0.5, 1.0, 2.0])])
            }
            MlDbetaReciprocal | MlDalphaReciprocal => {
                product(&[("q", &[1.0, 2.0, 3.0]), ("beta", &[1.0, 2.0]), ("z", &[0.5, 1.0])])
            }
            MlDerivLink => product(&[("alpha", &[0.5, 1.0, 2.0]), ("beta", &[1.0, 2.0]), ("z", &[0.5, 1.0])]),
            QClosed | PClosed => {
                let mut g = Vec::new();
                let ts = [re(0.5), re(2.0), c64(1.0, 1.0), Complex::from_polar(1.0, 2.0 * PI / 3.0)];
                for a in [0.7, 1.0, 1.5, 2.0] {
                    for t in ts {
                        g.push(ParamPoint::real(&[("a", a)]).with("t", t));
                    }
                }
                g
            }
            ThetaFilter => product(&[("n", &[1.0, 3.0, 4.0, 12.0]), ("k", &[0.0, 5.0, 6.0, 8.0, 60.0])]),
        }
    }

    /// Evaluates the oracle and the closed form.
    pub fn evaluate(self, p: &ParamPoint) -> Result<(Evaluated, Evaluated)> {
        use AuxCheck::*;
        let closed = |v: Complex| Evaluated { value: v, terms: 0 };
        let series = |v: Complex| Evaluated { value: v, terms: 0 };
        let (l, r) = match self {
            DJnuClosed | DInuClosed => {
                let kind = if self == DJnuClosed { BesselKind::J } else { BesselKind::I };
                let (nu, x) = (real(p, "nu")?, real(p, "x")?);
                (re(bessel_dnu_series(kind, nu, x)?), re(bessel_dnu_closed(kind, nu, x)?))
            }
            DJnuZero => {
                let x = real(p, "x")?;
                (re(bessel_dnu_series(BesselKind::J, 0.0, x)?), re(0.5 * PI * bessel(BesselKind::Y, 0.0, x)?))
            }
            DInuZero => {
                let x = real(p, "x")?;
                (re(bessel_dnu_series(BesselKind::I, 0.0, x)?), re(-bessel(BesselKind::K, 0.0, x)?))
            }
            WrightDbetaAlpha1 | WrightDalphaAlpha1 => {
                let target = if self == WrightDbetaAlpha1 { DerivTarget::Beta } else { DerivTarget::Alpha };
                let (beta, z) = (real(p, "beta")?, real(p, "z")?);
                let s = wright_deriv_series(target, &WrightParams { alpha: 1.0, beta, z: re(z) })?;
                (s, re(wright_deriv_closed_alpha1(target, beta, z)?))
            }
            WrightDbetaUnit | WrightDalphaUnit => {
                let z = real(p, "z")?;
                if !(z > 0.0) {
                    return domain("verify", "z must be positive");
                }
                let wp = WrightParams { alpha: 1.0, beta: 1.0, z: re(z) };
                if self == WrightDbetaUnit {
                    (wright_deriv_series(DerivTarget::Beta, &wp)?, re(wright_dbeta_unit(z)?))
                } else {
                    (wright_deriv_series(DerivTarget::Alpha, &wp)?, re(wright_dalpha_unit(z)?))
                }
            }
            WrightDerivLink => {
                let (alpha, beta, z) = (real(p, "alpha")?, real(p, "beta")?, p.get("z")?);
                let f = |z: Complex| wright_deriv_series(DerivTarget::Beta, &WrightParams { alpha, beta, z });
                let lhs = wright_deriv_series(DerivTarget::Alpha, &WrightParams { alpha, beta, z })?;
                (lhs, z_times_derivative(f, z)?)
            }
            MlDbetaInt | MlDalphaInt => {
                let target = if self == MlDbetaInt { DerivTarget::Beta } else { DerivTarget::Alpha };
                let (n, beta, z) = (int(p, "n")?, real(p, "beta")?, p.get("z")?);
                let s = ml_deriv_series(target, &MLParams { alpha: n as f64, beta, z })?;
                (s, ml_deriv_closed_int_alpha(target, n, beta, z)?)
            }
            MlTableDbeta | MlTableDalpha => {
                let target = if self == MlTableDbeta { DerivTarget::Beta } else { DerivTarget::Alpha };
                let (alpha, beta, z) = (int(p, "alpha")?, int(p, "beta")?, real(p, "z")?);
                let s = ml_deriv_series(target, &MLParams { alpha: alpha as f64, beta: beta as f64, z: re(z) })?;
                (s, re(ml_table_closed(alpha, beta, target, z)?))
            }
            MlDbetaReciprocal | MlDalphaReciprocal => {
                let target = if self == MlDbetaReciprocal { DerivTarget::Beta } else { DerivTarget::Alpha };
                let (q, beta, z) = (int(p, "q")?, real(p, "beta")?, p.get("z")?);
                let s = ml_deriv_series(target, &MLParams { alpha: 1.0 / q as f64, beta, z })?;
                (s, ml_deriv_closed_reciprocal_alpha(target, q, beta, z)?)
            }
            MlDerivLink => {
                let (alpha, beta, z) = (real(p, "alpha")?, real(p, "beta")?, p.get("z")?);
                let f = |z: Complex| ml_deriv_series(DerivTarget::Beta, &MLParams { alpha, beta, z });
                let lhs = ml_deriv_series(DerivTarget::Alpha, &MLParams { alpha, beta, z })?;
                (lhs, z_times_derivative(f, z)?)
            }
            QClosed => {
                let (a, t) = (p.get("a")?, p.get("t")?);
                (q_series(a, t)?, q_func(a, t)?)
            }
            PClosed => {
                let (a, t) = (p.get("a")?, p.get("t")?);
                (p_series(a, t)?, p_func(a, t)?)
            }
            ThetaFilter => {
                let (n, k) = (int(p, "n")?, int(p, "k")?);
                if n == 0 {
                    return domain("verify", "theta filter needs n >= 1");
                }
                let v = theta_filter(n as u64, k as u64);
                return Ok((Evaluated { value: v, terms: n as usize }, closed(re(if k % n == 0 { 1.0 } else { 0.0 }))));
            }
        };
        Ok((series(l), closed(r)))
    }
}

/// Cartesian product of real parameter values, first name varying slowest.
fn product(axes: &[(&str, &[f64])]) -> Vec<ParamPoint> {
    let mut out = vec![ParamPoint::new()];
    for (name, values) in axes {
        out = out.into_iter().flat_map(|p| values.iter().map(move |&v| p.clone().with(name, re(v)))).collect();
    }
    out
}

fn real(p: &ParamPoint, name: &str) -> Result<f64> {
    let v = p.get(name)?;
    if v.im != 0.0 {
        return Err(Error::InvalidInput(format!("parameter `{name}` must be real")));
    }
    Ok(v.re)
}

fn int(p: &ParamPoint, name: &str) -> Result<u32> {
    let v = real(p, name)?;
    if v < 0.0 || v.fract() != 0.0 || v > u32::MAX as f64 {
        return Err(Error::InvalidInput(format!("parameter `{name}` must be a nonnegative integer")));
    }
    Ok(v as u32)
}

/// z f'(z) by a central difference along the direction of z, h = 1e-5 max(1, |z|).
fn z_times_derivative<F: Fn(Complex) -> Result<Complex>>(f: F, z: Complex) -> Result<Complex> {
    let h = 1e-5 * z.norm().max(1.0);
    Ok(z * (f(z + h)? - f(z - h)?) / (2.0 * h))
}
