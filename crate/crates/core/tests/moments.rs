mod common;

use common::criteria::{first_moment, moments, params, MOMENT_LEVELS};
use proptest::prelude::*;
use shiryaev_qsd::moments::{moments_recurrence, recurrence_residual, variance};
use shiryaev_qsd::{lambda_bounds, MomentMethod, MomentSeries};

#[test]
fn first_moment_identity() {
    let (analytic, quadrature) = first_moment();
    assert!(analytic <= 1e-10, "{analytic}");
    assert!(quadrature <= 1e-6, "{quadrature}");
}

#[test]
fn routes_agree_and_figure_shapes_hold() {
    let r = moments();
    assert!(r.triple_spread <= 1e-9, "{}", r.triple_spread);
    assert!(r.quadrature_spread <= 1e-6, "{}", r.quadrature_spread);
    assert!(r.increasing_in_a);
    assert!(r.decreasing_in_n_at_1);
    assert!(r.increasing_in_n_above_3);
}

#[test]
fn first_moment_concave_in_a() {
    let m1: Vec<f64> = (1..=200)
        .map(|k| moments_recurrence(&params(0.25 * k as f64), 1).values[1])
        .collect();
    assert!(m1.windows(3).all(|w| w[2] - 2.0 * w[1] + w[0] < 0.0));
}

#[test]
fn first_two_moments_are_admissible() {
    for a in MOMENT_LEVELS {
        let p = params(a);
        let (lo, _) = lambda_bounds(a).unwrap();
        let m1 = a - 1.0 / p.lambda();
        assert!(m1 > 0.0 && lo > 1.0 / a);
        assert!(variance(&p).unwrap() > 0.0);
    }
}

#[test]
fn series_compute_matches_pointwise() {
    let p = params(3.0);
    for method in MomentMethod::ALL {
        let s = MomentSeries::compute(&p, 6, method).unwrap();
        assert_eq!(s.values.len(), 7);
        assert!((s.values[0] - 1.0).abs() < 1e-12);
        assert_eq!(s.method, method);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn moments_increase_in_a(a in 0.2..60.0f64, step in 0.01..5.0f64, n in 1usize..=5) {
        let lo = moments_recurrence(&params(a), n).values[n];
        let hi = moments_recurrence(&params(a + step), n).values[n];
        prop_assert!(hi > lo);
    }

    #[test]
    fn moments_bounded_by_powers_of_a(a in 0.2..60.0f64) {
        let v = moments_recurrence(&params(a), 10).values;
        prop_assert_eq!(v[0], 1.0);
        for (n, m) in v.iter().enumerate().skip(1) {
            prop_assert!(*m > 0.0 && *m < a.powi(n as i32));
        }
        for n in 1..=10 {
            prop_assert!(recurrence_residual(&params(a), &v, n).abs() < 1e-12);
        }
    }
}
