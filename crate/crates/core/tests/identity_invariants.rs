//! Cross-checks between identities and against independent closed forms.

use psisum::hyper::{f32_111_22, f32_112_22};
use psisum::identities::{
    check_identity, default_grid, identity_lhs, identity_rhs, published_variant, relative_residual, IdentityId, ParamPoint,
};
use psisum::series::extrapolate_eps;
use psisum::{re, Complex};

#[test]
fn two_closed_forms_of_the_shifted_digamma_sum_agree() {
    for p in default_grid(IdentityId::SumB) {
        let a = identity_rhs(IdentityId::SumB, &p).unwrap().value;
        let b = identity_rhs(IdentityId::SumBMiller, &p).unwrap().value;
        assert!(relative_residual(a, b) <= 1e-10, "{p}: {a} vs {b}");
    }
}

#[test]
fn f32_112_tends_to_the_dilogarithm_form_as_a_tends_to_one() {
    for z in [0.25, 0.5, 0.9] {
        let limit = extrapolate_eps(|e| f32_112_22(re(1.0 + e), re(z)), 1e-3).unwrap();
        let want = f32_111_22(re(z));
        assert!(relative_residual(limit, want) <= 1e-6, "z={z}: {limit} vs {want}");
    }
}

#[test]
fn f32_112_at_three_halves_is_elementary() {
    // 3F2(1, 1, 3/2; 2, 2; z) = (4/z) ln(2 (1 - sqrt(1-z)) / z)
    for z in [0.2, 0.5, 0.75, 0.95] {
        let v = f32_112_22(re(1.5), re(z)).unwrap().re;
        let want = 4.0 / z * (2.0 * (1.0 - (1.0 - z).sqrt()) / z).ln();
        assert!((v - want).abs() <= 1e-12 * want.abs(), "z={z}: {v} vs {want}");
    }
    let v = f32_112_22(re(1.5), re(0.75)).unwrap().re;
    assert!((v - 16.0 / 3.0 * (4.0f64 / 3.0).ln()).abs() <= 1e-12);
}

#[test]
fn log_integral_closed_form_matches_quadrature() {
    let p = ParamPoint::real(&[("alpha", 1.0), ("z", 0.5)]);
    let q = identity_lhs(IdentityId::LogIntegral, &p).unwrap().value.re;
    let c = identity_rhs(IdentityId::LogIntegral, &p).unwrap().value.re;
    let oracle = -0.16661616847948008;
    assert!((q - oracle).abs() <= 1e-12);
    assert!((c - oracle).abs() <= 1e-12);
}

#[test]
fn unit_argument_sum_with_b_plus_one_denominator() {
    let p = ParamPoint::real(&[("a", 0.3), ("b", 1.2)]);
    let l = identity_lhs(IdentityId::SumABB1Unit, &p).unwrap().value;
    let r = identity_rhs(IdentityId::SumABB1Unit, &p).unwrap().value;
    assert!(relative_residual(l, r) <= 1e-5, "{l} vs {r}");
    assert!((r.re + 2.8645424186366561).abs() <= 1e-12);
}

#[test]
fn gauss_sum_at_unit_argument() {
    let p = ParamPoint::real(&[("a", 0.5), ("b", 0.7), ("c", 3.0)]);
    let c = check_identity(IdentityId::GaussPsi, &p, 1e-8);
    assert!(c.pass, "{c:?}");
    assert!((c.rhs.re + 1.0869147085486731).abs() <= 1e-13);
}

#[test]
fn closed_forms_at_one_minus_z_need_its_series_to_converge() {
    let p = ParamPoint::real(&[("b", 1.3), ("c", 2.9)]).with("z", Complex::from_polar(0.5, 2.0));
    assert!(identity_lhs(IdentityId::SumBC, &p).is_ok());
    assert!(matches!(identity_rhs(IdentityId::SumBC, &p), Err(psisum::Error::Domain { .. })));
}

#[test]
fn preconditions_are_domain_errors() {
    use psisum::Error;
    let cases = [
        (IdentityId::SumBC, ParamPoint::real(&[("b", 1.0), ("c", 2.0), ("z", 0.5)])),
        (IdentityId::SumAK1, ParamPoint::real(&[("a", 2.0), ("z", 0.5)])),
        (IdentityId::SumBCUnit, ParamPoint::real(&[("b", 1.0), ("c", 1.5)])),
        (IdentityId::GaussPsi, ParamPoint::real(&[("a", 1.0), ("b", 1.0), ("c", 1.5)])),
    ];
    for (id, p) in cases {
        let lhs = identity_lhs(id, &p);
        let rhs = identity_rhs(id, &p);
        assert!(
            matches!(lhs, Err(Error::Domain { .. }) | Err(Error::Pole { .. }))
                || matches!(rhs, Err(Error::Domain { .. }) | Err(Error::Pole { .. })),
            "{id} {p}: {lhs:?} {rhs:?}"
        );
    }
}

#[test]
fn published_forms_miss_their_oracles_across_the_grid() {
    for id in [IdentityId::SumBC, IdentityId::SumB, IdentityId::SumABB1Unit] {
        for p in default_grid(id) {
            let (l, r) = published_variant(id, &p).unwrap().unwrap();
            // At b = 1 the omitted psi(b) z/(1-z) term is the only difference and is nonzero.
            assert!(relative_residual(l, r) > 1e-4, "{id} {p}: published form agrees");
        }
    }
}

#[test]
fn complex_points_are_supported_where_the_theorem_allows() {
    // |z| < 1 and |1 - z| < 1, so the 3F2 at 1 - z converges too.
    let z = Complex::from_polar(0.5, 0.8);
    for (id, p) in [
        (IdentityId::SumBC, ParamPoint::real(&[("b", 1.3), ("c", 2.9)]).with("z", z)),
        (IdentityId::SumABB1, ParamPoint::real(&[("a", 0.4), ("b", 1.5)]).with("z", z)),
        (IdentityId::SumAK1, ParamPoint::real(&[("a", 0.4)]).with("z", z)),
        (IdentityId::F32_112, ParamPoint::real(&[("a", 0.4)]).with("z", z)),
    ] {
        let c = check_identity(id, &p, 1e-8);
        assert!(c.pass, "{c:?}");
        assert!(c.lhs.im.abs() > 1e-3);
    }
}
