//! Named evaluation of the library's functions for the `eval` command.

use std::collections::BTreeMap;

use super::grid::parse_complex;
use crate::hyper::{pfq, HypergeometricSpec};
use crate::meijerg::{meijer_g, MeijerGSpec};
use crate::paramderiv::{
    bessel_dnu_closed, bessel_dnu_series, ml_deriv_series, mittag_leffler, p_func, q_func, theta_filter,
    wright, wright_deriv_series, DerivTarget, MLParams, WrightParams,
};
use crate::specfun::{
    bessel, beta, digamma, dilog, exp_integral, gamma, inc_beta, inc_gamma_lower, lerch_phi, pochhammer, BesselKind,
    ExpIntKind,
};
use crate::{re, Complex};

/// A function reachable from `eval`.
#[derive(Debug, Clone, Copy)]
pub struct FunctionInfo {
    pub name: &'static str,
    /// Argument names; list arguments are comma-separated.
    pub args: &'static [&'static str],
    pub description: &'static str,
}

macro_rules! registry {
    ($($name:literal ($($arg:literal),*) $desc:literal;)*) => {
        pub const FUNCTIONS: &[FunctionInfo] = &[$(FunctionInfo { name: $name, args: &[$($arg),*], description: $desc },)*];
    };
}

registry! {
    "gamma" ("z") "Gamma(z)";
    "digamma" ("z") "psi(z)";
    "beta" ("a", "b") "B(a, b)";
    "pochhammer" ("x", "n") "(x)_n";
    "inc_beta" ("z", "a", "b") "B_z(a, b), b may be <= 0 for |z| < 1";
    "inc_gamma_lower" ("a", "t") "gamma(a, t)";
    "e1" ("x") "E1(x), x > 0";
    "ei" ("x") "Ei(x), x > 0";
    "dilog" ("z") "Li2(z)";
    "lerch_phi" ("z", "s", "b") "Phi(z, s, b)";
    "bessel_j" ("nu", "x") "J_nu(x)";
    "bessel_y" ("nu", "x") "Y_nu(x)";
    "bessel_i" ("nu", "x") "I_nu(x)";
    "bessel_k" ("nu", "x") "K_nu(x)";
    "dnu_bessel_j" ("nu", "x") "dJ_nu(x)/dnu, Meijer-G closed form";
    "dnu_bessel_i" ("nu", "x") "dI_nu(x)/dnu, Meijer-G closed form";
    "dnu_bessel_j_series" ("nu", "x") "dJ_nu(x)/dnu, digamma series";
    "dnu_bessel_i_series" ("nu", "x") "dI_nu(x)/dnu, digamma series";
    "pfq" ("a", "b", "z") "pFq(a; b; z), a and b comma-separated lists";
    "meijer_g" ("m", "n", "a", "b", "x") "G^{m,n}_{p,q}(x | a; b), a and b comma-separated lists";
    "wright" ("alpha", "beta", "z") "W_(alpha,beta)(z)";
    "wright_dalpha" ("alpha", "beta", "z") "dW_(alpha,beta)(z)/dalpha";
    "wright_dbeta" ("alpha", "beta", "z") "dW_(alpha,beta)(z)/dbeta";
    "mittag_leffler" ("alpha", "beta", "z") "E_(alpha,beta)(z)";
    "ml_dalpha" ("alpha", "beta", "z") "dE_(alpha,beta)(z)/dalpha";
    "ml_dbeta" ("alpha", "beta", "z") "dE_(alpha,beta)(z)/dbeta";
    "q_func" ("a", "t") "Q(a, t) = sum t^k psi(k+a)/(a)_k";
    "p_func" ("a", "t") "P(a, t) = dQ(a, t)/dt";
    "theta_filter" ("n", "k") "(1/n) sum_(m=1..n) exp(2 pi i m k/n)";
}

/// Why `eval` could not produce a value.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    /// Unknown function or malformed arguments.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Math(#[from] crate::Error),
}

struct Args<'a>(BTreeMap<&'a str, &'a str>);

impl Args<'_> {
    fn complex(&self, k: &str) -> Result<Complex, EvalError> {
        parse_complex(self.0[k]).ok_or_else(|| EvalError::Usage(format!("`{k}={}` is not a number", self.0[k])))
    }

    fn real(&self, k: &str) -> Result<f64, EvalError> {
        let v = self.complex(k)?;
        if v.im != 0.0 {
            return Err(EvalError::Usage(format!("`{k}` must be real")));
        }
        Ok(v.re)
    }

    fn uint(&self, k: &str) -> Result<u64, EvalError> {
        self.0[k].parse().map_err(|_| EvalError::Usage(format!("`{k}={}` is not a nonnegative integer", self.0[k])))
    }

    fn list(&self, k: &str) -> Result<Vec<Complex>, EvalError> {
        let s = self.0[k].trim();
        if s.is_empty() {
            return Ok(Vec::new());
        }
        s.split(',').map(|x| parse_complex(x).ok_or_else(|| EvalError::Usage(format!("`{x}` in `{k}` is not a number")))).collect()
    }

    fn real_list(&self, k: &str) -> Result<Vec<f64>, EvalError> {
        self.list(k)?
            .into_iter()
            .map(|v| if v.im == 0.0 { Ok(v.re) } else { Err(EvalError::Usage(format!("`{k}` must be real"))) })
            .collect()
    }
}

fn usage_listing() -> String {
    let names: Vec<String> = FUNCTIONS.iter().map(|f| format!("{}({})", f.name, f.args.join(", "))).collect();
    format!("available functions: {}", names.join(", "))
}

/// Evaluates a registry function from `key=value` arguments.
pub fn eval_function(name: &str, args: &[(String, String)]) -> Result<Complex, EvalError> {
    let info = FUNCTIONS
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| EvalError::Usage(format!("unknown function `{name}`; {}", usage_listing())))?;
    let mut map = BTreeMap::new();
    for (k, v) in args {
        if map.insert(k.as_str(), v.as_str()).is_some() {
            return Err(EvalError::Usage(format!("argument `{k}` given twice")));
        }
    }
    let mut want = info.args.to_vec();
    want.sort_unstable();
    if map.keys().copied().collect::<Vec<_>>() != want {
        return Err(EvalError::Usage(format!("{name} takes {}", info.args.join(", "))));
    }
    let a = Args(map);
    let wp = |a: &Args| -> Result<WrightParams, EvalError> {
        Ok(WrightParams { alpha: a.real("alpha")?, beta: a.real("beta")?, z: a.complex("z")? })
    };
    let mp = |a: &Args| -> Result<MLParams, EvalError> {
        Ok(MLParams { alpha: a.real("alpha")?, beta: a.real("beta")?, z: a.complex("z")? })
    };
    let bk = |kind, a: &Args| -> Result<Complex, EvalError> { Ok(re(bessel(kind, a.real("nu")?, a.real("x")?)?)) };
    Ok(match name {
        "gamma" => gamma(a.complex("z")?)?,
        "digamma" => digamma(a.complex("z")?)?,
        "beta" => beta(a.complex("a")?, a.complex("b")?)?,
        "pochhammer" => pochhammer(a.complex("x")?, a.uint("n")? as usize),
        "inc_beta" => inc_beta(a.complex("z")?, a.complex("a")?, a.complex("b")?)?,
        "inc_gamma_lower" => inc_gamma_lower(a.complex("a")?, a.complex("t")?)?,
        "e1" => re(exp_integral(ExpIntKind::E1, a.real("x")?)?),
        "ei" => re(exp_integral(ExpIntKind::Ei, a.real("x")?)?),
        "dilog" => dilog(a.complex("z")?),
        "lerch_phi" => lerch_phi(a.complex("z")?, a.complex("s")?, a.complex("b")?)?,
        "bessel_j" => bk(BesselKind::J, &a)?,
        "bessel_y" => bk(BesselKind::Y, &a)?,
        "bessel_i" => bk(BesselKind::I, &a)?,
        "bessel_k" => bk(BesselKind::K, &a)?,
        "dnu_bessel_j" => re(bessel_dnu_closed(BesselKind::J, a.real("nu")?, a.real("x")?)?),
        "dnu_bessel_i" => re(bessel_dnu_closed(BesselKind::I, a.real("nu")?, a.real("x")?)?),
        "dnu_bessel_j_series" => re(bessel_dnu_series(BesselKind::J, a.real("nu")?, a.real("x")?)?),
        "dnu_bessel_i_series" => re(bessel_dnu_series(BesselKind::I, a.real("nu")?, a.real("x")?)?),
        "pfq" => {
            let r = pfq(&HypergeometricSpec::new(&a.list("a")?, &a.list("b")?, a.complex("z")?), 1e-16)?;
            if !r.converged {
                return Err(crate::Error::NonConvergence { what: "pfq", terms: r.terms_used }.into());
            }
            r.value
        }
        "meijer_g" => {
            let spec = MeijerGSpec::new(
                a.uint("m")? as usize,
                a.uint("n")? as usize,
                &a.real_list("a")?,
                &a.real_list("b")?,
                a.real("x")?,
            );
            re(meijer_g(&spec, 1e-16)?)
        }
        "wright" => wright(&wp(&a)?)?,
        "wright_dalpha" => wright_deriv_series(DerivTarget::Alpha, &wp(&a)?)?,
        "wright_dbeta" => wright_deriv_series(DerivTarget::Beta, &wp(&a)?)?,
        "mittag_leffler" => mittag_leffler(&mp(&a)?)?,
        "ml_dalpha" => ml_deriv_series(DerivTarget::Alpha, &mp(&a)?)?,
        "ml_dbeta" => ml_deriv_series(DerivTarget::Beta, &mp(&a)?)?,
        "q_func" => q_func(a.complex("a")?, a.complex("t")?)?,
        "p_func" => p_func(a.complex("a")?, a.complex("t")?)?,
        "theta_filter" => {
            let n = a.uint("n")?;
            if n == 0 {
                return Err(EvalError::Usage("theta_filter needs n >= 1".into()));
            }
            theta_filter(n, a.uint("k")?)
        }
        _ => unreachable!("every registry entry is dispatched"),
    })
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A real number with 15 significant digits, as C's `%.15g`.
pub fn format_g15(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..15).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_fraction(mantissa), exp.abs())
    } else {
        trim_fraction(&format!("{x:.*}", (14 - exp) as usize)).to_string()
    }
}

/// A complex value with 15 significant digits per part; real values print without an imaginary part.
pub fn format_value(z: Complex) -> String {
    if z.im == 0.0 {
        return format_g15(z.re);
    }
    let sign = if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) { "-" } else { "+" };
    format!("{}{sign}{}i", format_g15(z.re), format_g15(z.im.abs()))
}
