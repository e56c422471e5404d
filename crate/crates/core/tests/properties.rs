//! Functional equations and structural identities as property tests.

use std::f64::consts::PI;

use proptest::prelude::*;
use psisum::paramderiv::{
    ml_deriv_series, q_func, q_series, theta_filter, wright_deriv_series, DerivTarget, MLParams, WrightParams,
};
use psisum::series::{extrapolate_eps, integrate};
use psisum::specfun::{bessel, beta, digamma, gamma, inc_beta, pochhammer, BesselKind};
use psisum::{c64, re, Complex};

fn rel(a: Complex, b: Complex) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

fn complex_in(re_lo: f64, re_hi: f64, im: f64) -> impl Strategy<Value = Complex> {
    (re_lo..re_hi, -im..im).prop_map(|(x, y)| c64(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gamma_recurrence(z in complex_in(0.1, 12.0, 6.0)) {
        let lhs = gamma(z + 1.0).unwrap();
        let rhs = z * gamma(z).unwrap();
        prop_assert!(rel(lhs, rhs) <= 1e-10, "{z}: {lhs} vs {rhs}");
    }

    #[test]
    fn gamma_duplication(z in complex_in(0.1, 8.0, 4.0)) {
        let lhs = gamma(z).unwrap() * gamma(z + 0.5).unwrap();
        let rhs = re(2.0).powc(re(1.0) - 2.0 * z) * PI.sqrt() * gamma(2.0 * z).unwrap();
        prop_assert!(rel(lhs, rhs) <= 1e-10, "{z}: {lhs} vs {rhs}");
    }

    #[test]
    fn digamma_recurrence(z in complex_in(-6.0, 12.0, 6.0)) {
        prop_assume!((z - z.re.round()).norm() > 1e-3);
        let lhs = digamma(z + 1.0).unwrap();
        let rhs = digamma(z).unwrap() + z.inv();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()), "{z}: {lhs} vs {rhs}");
    }

    #[test]
    fn digamma_reflection(x in 0.02f64..0.98, shift in -3i32..3) {
        let z = x + shift as f64;
        let lhs = digamma(re(1.0 - z)).unwrap() - digamma(re(z)).unwrap();
        let rhs = PI / (PI * z).tan();
        prop_assert!((lhs.re - rhs).abs() <= 1e-10 * (1.0 + rhs.abs()), "{z}: {lhs} vs {rhs}");
    }

    #[test]
    fn incomplete_beta_reflection(a in 0.2f64..5.0, b in 0.2f64..5.0, z in 0.05f64..0.95) {
        let lhs = inc_beta(re(z), re(a), re(b)).unwrap() + inc_beta(re(1.0 - z), re(b), re(a)).unwrap();
        let rhs = beta(re(a), re(b)).unwrap();
        prop_assert!(rel(lhs, rhs) <= 1e-10, "a={a} b={b} z={z}: {lhs} vs {rhs}");
    }

    #[test]
    fn bessel_jy_wronskian(nu in 0.0f64..3.0, x in 0.5f64..20.0) {
        let j = |n| bessel(BesselKind::J, n, x).unwrap();
        let y = |n| bessel(BesselKind::Y, n, x).unwrap();
        let (a, b) = (j(nu + 1.0) * y(nu), j(nu) * y(nu + 1.0));
        let w = a - b;
        let want = 2.0 / (PI * x);
        prop_assert!((w - want).abs() <= 1e-10 * a.abs().max(b.abs()).max(1.0), "nu={nu} x={x}: {w} vs {want}");
    }

    #[test]
    fn bessel_ik_wronskian(nu in 0.0f64..3.0, x in 0.5f64..20.0) {
        let i = |n| bessel(BesselKind::I, n, x).unwrap();
        let k = |n| bessel(BesselKind::K, n, x).unwrap();
        let w = i(nu) * k(nu + 1.0) + i(nu + 1.0) * k(nu);
        prop_assert!((w * x - 1.0).abs() <= 1e-10, "nu={nu} x={x}: {}", w * x);
    }

    #[test]
    fn reciprocal_pochhammer_derivative(x in 0.3f64..6.0, n in 1usize..12) {
        // d/dx 1/(x)_n = -[psi(x+n) - psi(x)] / (x)_n
        let f = |x: f64| pochhammer(re(x), n).inv();
        let h = 1e-5 * x.max(1.0);
        let fd = (f(x + h) - f(x - h)) / (2.0 * h);
        let exact = -(digamma(re(x + n as f64)).unwrap() - digamma(re(x)).unwrap()) * f(x);
        prop_assert!((fd - exact).norm() <= 1e-6 * (1.0 + exact.norm()), "x={x} n={n}: {fd} vs {exact}");
    }

    #[test]
    fn quadrature_is_additive(a in -2.0f64..0.0, m in 0.0f64..1.0, b in 1.0f64..3.0, w in 0.5f64..4.0) {
        let f = |t: f64| re((w * t).sin() * (-t * t / 4.0).exp());
        let whole = integrate(f, a, b, 1e-11).unwrap().value;
        let parts = integrate(f, a, m, 1e-11).unwrap().value + integrate(f, m, b, 1e-11).unwrap().value;
        prop_assert!((whole - parts).norm() <= 1e-10);
    }

    #[test]
    fn eps_extrapolation_removes_even_powers(g in -3.0f64..3.0, c2 in -5.0f64..5.0, c4 in -5.0f64..5.0) {
        let v = extrapolate_eps(|e| Ok(re(g + c2 * e * e + c4 * e.powi(4))), 1e-3).unwrap();
        prop_assert!((v.re - g).abs() <= 1e-10, "{v} vs {g}");
    }

    #[test]
    fn q_series_matches_closed_form(a in 0.3f64..3.0, r in 0.0f64..4.0, phi in -3.1f64..3.1) {
        let t = Complex::from_polar(r, phi);
        let s = q_series(re(a), t).unwrap();
        let c = q_func(re(a), t).unwrap();
        prop_assert!((s - c).norm() <= 1e-9 * (1.0 + s.norm()), "a={a} t={t}: {s} vs {c}");
    }

    #[test]
    fn wright_alpha_derivative_is_z_dz_of_beta_derivative(alpha in 0.2f64..2.0, beta in 0.5f64..3.0, z in 0.2f64..2.0) {
        let d = |z: f64, t| wright_deriv_series(t, &WrightParams { alpha, beta, z: re(z) }).unwrap();
        let h = 1e-5 * z.max(1.0);
        let link = z * (d(z + h, DerivTarget::Beta) - d(z - h, DerivTarget::Beta)) / (2.0 * h);
        let direct = d(z, DerivTarget::Alpha);
        prop_assert!((link - direct).norm() <= 1e-5 * (1.0 + direct.norm()));
    }

    #[test]
    fn ml_alpha_derivative_is_z_dz_of_beta_derivative(alpha in 0.3f64..3.0, beta in 0.5f64..3.0, z in 0.2f64..2.0) {
        let d = |z: f64, t| ml_deriv_series(t, &MLParams { alpha, beta, z: re(z) }).unwrap();
        let h = 1e-5 * z.max(1.0);
        let link = z * (d(z + h, DerivTarget::Beta) - d(z - h, DerivTarget::Beta)) / (2.0 * h);
        let direct = d(z, DerivTarget::Alpha);
        prop_assert!((link - direct).norm() <= 1e-5 * (1.0 + direct.norm()));
    }
}

#[test]
fn theta_filter_is_an_indicator() {
    for n in 1..=12u64 {
        for k in 0..=60u64 {
            let want = if k % n == 0 { 1.0 } else { 0.0 };
            let got = theta_filter(n, k);
            assert!((got - re(want)).norm() <= 1e-13, "n={n} k={k}: {got}");
        }
    }
}

proptest! {
    #[test]
    fn theta_filter_reindexes_a_geometric_series(n in 1u64..=12, x in -0.95f64..0.95) {
        // sum_k theta_{n,k} x^k over k <= N equals sum_j x^(n j) over n j <= N.
        let big_n = 240u64;
        let filtered: Complex = (0..=big_n).map(|k| theta_filter(n, k) * x.powi(k as i32)).sum();
        let direct: f64 = (0..=big_n / n).map(|j| x.powi((n * j) as i32)).sum();
        prop_assert!((filtered - re(direct)).norm() <= 1e-12, "n={n} x={x}: {filtered} vs {direct}");
    }
}
