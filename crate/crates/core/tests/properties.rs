mod common;

use common::close;
use cubic_beta::dist::{AnyDist, CBetaDist, Family, ModelParams, SCBetaDist, UnitDistribution};
use cubic_beta::fit::MeanRegressionParams;
use cubic_beta::fit::{neg_loglik, Dataset};
use cubic_beta::numerics::{
    inc_beta_step_down, reg_inc_beta, solve_monotone_poly, RootSolveConfig,
};
use cubic_beta::params::{shape_from_coeffs, CubicCoeffs, ShapeParams};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = Family> {
    proptest::sample::select(Family::ALL.to_vec())
}

fn params(ab: std::ops::Range<f64>) -> impl Strategy<Value = ModelParams> {
    (ab.clone(), ab, 0.01f64..0.99, 0.01f64..0.99)
        .prop_map(|(a, b, g, d)| ModelParams::new(a, b, g, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn shape_coefficient_round_trip(g in 0.0f64..=1.0, d in 0.001f64..0.999) {
        let s = ShapeParams::new(g, d).unwrap();
        let c = s.to_coeffs();
        prop_assert!((c.a + c.b + c.c - 1.0).abs() < 1e-12);
        prop_assert!(c.min_slope() >= -1e-12);
        let back = shape_from_coeffs(c).unwrap();
        prop_assert!((back.gamma - g).abs() < 1e-9, "{:?} -> {:?}", s, back);
        prop_assert!((back.delta - d).abs() < 1e-12);
    }

    #[test]
    fn flip_commutes_with_coefficients(g in 0.0f64..=1.0, d in 0.0f64..=1.0) {
        let s = ShapeParams::new(g, d).unwrap();
        let via_shape = s.flip().to_coeffs();
        let via_coeffs = s.to_coeffs().flipped();
        prop_assert!((via_shape.a - via_coeffs.a).abs() < 1e-12);
        prop_assert!((via_shape.b - via_coeffs.b).abs() < 1e-12);
        prop_assert!((via_shape.c - via_coeffs.c).abs() < 1e-12);
        let twice = s.flip().flip();
        prop_assert_eq!(twice.delta, s.delta);
        prop_assert!((twice.gamma - s.gamma).abs() < 1e-15);
    }

    #[test]
    fn transform_is_increasing_map_of_unit_interval(
        g in 0.0f64..=1.0, d in 0.0f64..=1.0, p in 0.0f64..1.0, h in 1e-6f64..0.5,
    ) {
        let c = ShapeParams::new(g, d).unwrap().to_coeffs();
        prop_assert!(c.value(0.0).abs() < 1e-15);
        prop_assert!((c.value(1.0) - 1.0).abs() < 1e-12);
        let q = (p + h).min(1.0);
        prop_assert!(c.value(q) >= c.value(p) - 1e-15);
    }

    #[test]
    fn inversion_round_trip(g in 0.01f64..0.99, d in 0.01f64..0.99, p in 0.0f64..=1.0) {
        let c = ShapeParams::new(g, d).unwrap().to_coeffs();
        let x = c.value(p).clamp(0.0, 1.0);
        let inv = solve_monotone_poly(c, x, &RootSolveConfig::default()).unwrap();
        prop_assert!((c.value(inv.p) - x).abs() < 1e-13);
        prop_assert!((inv.p + inv.q - 1.0).abs() < 1e-15);
    }

    #[test]
    fn incomplete_beta_matches_statrs(a in 0.1f64..50.0, b in 0.1f64..50.0, x in 0.0f64..=1.0) {
        let ours = reg_inc_beta(a, b, x).unwrap();
        let theirs = statrs::function::beta::beta_reg(a, b, x);
        prop_assert!((ours - theirs).abs() < 1e-11, "{ours} vs {theirs}");
    }

    #[test]
    fn step_down_identity(a in 0.2f64..30.0, b in 0.2f64..30.0, x in 0.001f64..0.999) {
        let i0 = reg_inc_beta(a, b, x).unwrap();
        let stepped = inc_beta_step_down(a, b, x, i0).unwrap();
        let direct = reg_inc_beta(a + 1.0, b, x).unwrap();
        prop_assert!((stepped - direct).abs() < 1e-12);
    }

    #[test]
    fn cdf_is_a_distribution_function(f in family(), p in params(0.3..25.0)) {
        let d = AnyDist::new(f, &p).unwrap();
        prop_assert!(d.cdf(0.0).unwrap().abs() < 1e-12);
        prop_assert!((d.cdf(1.0).unwrap() - 1.0).abs() < 1e-12);
        let mut prev = 0.0;
        for i in 0..=200 {
            let v = d.cdf(i as f64 / 200.0).unwrap();
            prop_assert!((0.0..=1.0).contains(&v));
            prop_assert!(v >= prev - 1e-13, "{f}: cdf decreases at {}", i);
            prev = v;
        }
    }

    #[test]
    fn quantile_inverts_cdf(f in family(), p in params(0.5..20.0), q in 0.001f64..0.999) {
        let d = AnyDist::new(f, &p).unwrap();
        let x = d.quantile(q).unwrap();
        prop_assert!((d.cdf(x).unwrap() - q).abs() < 1e-10, "{f} {:?}", p);
    }

    #[test]
    fn label_invariance_of_pdf_and_cdf(f in family(), p in params(0.3..25.0), x in 0.001f64..0.999) {
        let d = AnyDist::new(f, &p).unwrap();
        let r = AnyDist::new(f, &p.flipped()).unwrap();
        prop_assert!(close(d.pdf(x).unwrap(), r.pdf(1.0 - x).unwrap(), 1e-10));
        prop_assert!((d.cdf(x).unwrap() - (1.0 - r.cdf(1.0 - x).unwrap())).abs() < 1e-10);
    }

    #[test]
    fn mean_of_flip_is_complement(f in family(), p in params(0.3..25.0)) {
        let d = AnyDist::new(f, &p).unwrap();
        let r = AnyDist::new(f, &p.flipped()).unwrap();
        prop_assert!((d.mean() + r.mean() - 1.0).abs() < 1e-12);
        prop_assert!((d.variance() - r.variance()).abs() < 1e-12);
    }

    #[test]
    fn cbeta_moment_routes_agree(p in params(0.3..25.0), n in 1u32..6) {
        let d = CBetaDist::new(p.alpha, p.beta, p.gamma, p.delta).unwrap();
        prop_assert!((d.raw_moment(n) - d.raw_moment_expanded(n)).abs() < 1e-12);
    }

    #[test]
    fn scbeta_cdf_routes_agree(p in params(0.3..25.0), x in 0.0f64..=1.0) {
        let d = SCBetaDist::new(p.alpha, p.beta, p.gamma, p.delta).unwrap();
        prop_assert!((d.cdf(x).unwrap() - d.cdf_three_term(x).unwrap()).abs() < 1e-11);
    }

    #[test]
    fn mean_reparameterisation_preserves_likelihood(
        p in params(0.5..20.0),
        xs in proptest::collection::vec(0.001f64..0.999, 5..40),
    ) {
        let d = CBetaDist::new(p.alpha, p.beta, p.gamma, p.delta).unwrap();
        let reg = MeanRegressionParams {
            mu: d.mean(),
            eta: p.alpha + p.beta,
            gamma: p.gamma,
            delta: p.delta,
        };
        let q = reg.to_model_params().unwrap();
        let data = Dataset::from_unit("prop", xs).unwrap();
        let direct = neg_loglik(Family::CBeta, &p, &data).unwrap();
        let via = neg_loglik(Family::CBeta, &q, &data).unwrap();
        prop_assert!((direct - via).abs() <= 1e-10 * direct.abs().max(1.0), "{direct} vs {via}");
    }
}

#[test]
fn monotone_region_boundary_is_weakly_admissible() {
    for &c in &[-2.0, -1.0, 0.0, 1.0, 2.5, 4.0] {
        let s = ShapeParams::new(0.0, (c + 2.0) / 6.0).unwrap();
        assert!(s.to_coeffs().validate().is_ok(), "c = {c}");
    }
    assert!(CubicCoeffs::new(3.0, -3.0, 1.0).validate().is_ok());
    assert!(CubicCoeffs::new(-0.1, 1.1, 0.0).validate().is_err());
}
