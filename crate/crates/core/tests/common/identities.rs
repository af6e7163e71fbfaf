//! Randomized special-function identities.

use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{RngAlgorithm, TestRng, TestRunner};
use shiryaev_qsd::numerics::{integrate_with, QuadOptions};
use shiryaev_qsd::specfun::{
    bessel_i_complex, bessel_k, bessel_k_complex, gamma, hyp2f2, kampe_de_feriet, pochhammer,
    whittaker_m_with_derivative, whittaker_w, whittaker_w_with_derivative,
};
use shiryaev_qsd::{OrderParam, SeriesControl};

const PI: f64 = core::f64::consts::PI;

pub type Check = Result<(), TestCaseError>;

pub fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 100,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// Real order in `[0, 1.9]` or imaginary order in `[0, 2]`.
pub fn order() -> impl Strategy<Value = OrderParam> {
    prop_oneof![
        (0.0..1.9f64).prop_map(OrderParam::real),
        (0.0..2.0f64).prop_map(OrderParam::imaginary)
    ]
}

/// Admissible denominator parameter, kept away from the poles.
pub fn denominator() -> impl Strategy<Value = f64> {
    prop_oneof![0.2..4.0f64, -2.8..-2.2f64, -1.8..-1.2f64, -0.8..-0.2f64]
}

pub fn log_z() -> std::ops::Range<f64> {
    (0.05f64).ln()..(50.0f64).ln()
}

pub fn reflection_order() -> impl Strategy<Value = Complex64> {
    prop_oneof![
        (0.05..0.95f64).prop_map(c),
        (1.05..1.95f64).prop_map(c),
        (0.05..2.0f64).prop_map(|t| Complex64::new(0.0, t))
    ]
}

pub fn hyp2f2_contiguous((a, b, cc, d, z): (f64, f64, f64, f64, f64)) -> Check {
    let ctl = SeriesControl::default();
    let f = |a1: f64, a2: f64, b1: f64, b2: f64| {
        hyp2f2(c(a1), c(a2), c(b1), c(b2), c(z), &ctl).unwrap()
    };
    let f1 = f(a + 1.0, b + 1.0, cc + 1.0, d + 1.0);
    let f2 = f(a, b + 1.0, cc, d);
    let f3 = f(a + 1.0, b, cc, d);
    let t1 = (b - a) * z * f1.value;
    let t2 = cc * d * f2.value;
    let t3 = cc * d * f3.value;
    let residual = (t1 + t2 - t3).norm();
    let scale = t1.norm() + t2.norm() + t3.norm();
    // Near-pole denominators with z < 0 cancel; each value carries its own rounding bound.
    let reported = ((b - a) * z).abs() * f1.abs_err + (cc * d).abs() * (f2.abs_err + f3.abs_err);
    prop_assert!(
        residual <= 1e-10 * scale + reported,
        "residual {residual:e} scale {scale:e} reported {reported:e}"
    );
    Ok(())
}

pub fn pochhammer_reflection((re, im, n, k_frac): (f64, f64, usize, f64)) -> Check {
    prop_assume!(im != 0.0 || (re - re.round()).abs() > 1e-3);
    let z = Complex64::new(re, im);
    let k = ((n as f64) * k_frac).floor() as usize;
    let lhs = pochhammer(z, n - k);
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let rhs = sign * pochhammer(z, n) / pochhammer(1.0 - z - n as f64, k);
    prop_assert!((lhs - rhs).norm() <= 1e-13 * lhs.norm(), "{lhs} vs {rhs}");
    Ok(())
}

pub fn pochhammer_reflection_integer((z, n, k_frac): (i32, usize, f64)) -> Check {
    let k = ((n as f64) * k_frac).floor() as usize;
    let z = c(z as f64);
    let denom = pochhammer(1.0 - z - n as f64, k);
    prop_assume!(denom.norm() != 0.0);
    // Integer-representable: every partial product stays below 2^53.
    prop_assume!(pochhammer(z, n).norm() < 9.0e15 && denom.norm() < 9.0e15);
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    // Real division: complex division rounds through |denom|².
    prop_assert_eq!(
        pochhammer(z, n - k).re,
        sign * pochhammer(z, n).re / denom.re
    );
    Ok(())
}

pub fn whittaker_wronskian((kappa, mu, log_z): (f64, OrderParam, f64)) -> Check {
    let z = log_z.exp();
    let m_order = mu.as_complex();
    prop_assume!((2.0 * m_order.re - (2.0 * m_order.re).round()).abs() > 1e-3 || m_order.im != 0.0);
    let (m, dm) = whittaker_m_with_derivative(kappa, m_order, z).unwrap();
    let w = whittaker_w_with_derivative(kappa, mu, z).unwrap();
    let lhs = m * w.derivative - dm * w.value;
    let rhs = -gamma(1.0 + 2.0 * m_order).unwrap() / gamma(0.5 + m_order - kappa).unwrap();
    let scale = (m * w.derivative).norm() + (dm * w.value).norm();
    prop_assert!(
        (lhs - rhs).norm() <= 1e-10 * scale,
        "lhs {lhs} rhs {rhs} scale {scale:e}"
    );
    Ok(())
}

pub fn bessel_wronskian((nu, log_z): (OrderParam, f64)) -> Check {
    let z = log_z.exp();
    let nu = nu.as_complex();
    let i = bessel_i_complex(nu, z).unwrap();
    let k = bessel_k_complex(nu, z).unwrap();
    let di = bessel_i_complex(nu + 1.0, z).unwrap() + nu / z * i;
    let dk = -bessel_k_complex(nu + 1.0, z).unwrap() + nu / z * k;
    let w = (k * di - i * dk) * z;
    prop_assert!((w - 1.0).norm() <= 1e-10, "z·W = {w}");
    Ok(())
}

pub fn bessel_k_reflection((nu, z): (Complex64, f64)) -> Check {
    let ip = bessel_i_complex(nu, z).unwrap();
    let weight = PI / (2.0 * (nu * PI).sin());
    let reflected = (bessel_i_complex(-nu, z).unwrap() - ip) * weight;
    let k = bessel_k_complex(nu, z).unwrap();
    // The right-hand side loses |I·weight| / |K| digits to cancellation.
    let budget = 1e-10 * k.norm() + 1e-14 * ip.norm() * weight.norm();
    prop_assert!((k - reflected).norm() <= budget, "{k} vs {reflected}");
    let neg = bessel_k_complex(-nu, z).unwrap();
    prop_assert!((neg - k).norm() <= 1e-10 * k.norm());
    Ok(())
}

pub fn w_xi_symmetry((kappa, mu, log_z): (f64, OrderParam, f64)) -> Check {
    let z = log_z.exp();
    let plus = whittaker_w(kappa, mu, z).unwrap();
    let minus = whittaker_w(kappa, mu.negated(), z).unwrap();
    prop_assert_eq!(plus.to_bits(), minus.to_bits());
    let k_plus = bessel_k(mu, z).unwrap();
    let k_minus = bessel_k(mu.negated(), z).unwrap();
    prop_assert_eq!(k_plus.to_bits(), k_minus.to_bits());
    Ok(())
}

/// Both sides of the Miller–Moskowitz identity.
pub fn miller_moskowitz(a: f64, b: f64, x: f64, y: f64) -> (f64, f64) {
    let lhs = kampe_de_feriet(
        c((a + b + 1.0) / 2.0),
        c((a - b + 1.0) / 2.0),
        c((a + b + 3.0) / 2.0),
        c((a - b + 3.0) / 2.0),
        x * y * y / 4.0,
        y * y / 4.0,
        &SeriesControl::default(),
    )
    .unwrap()
    .value;
    assert!(lhs.im.abs() < 1e-14 * lhs.re.abs());
    let nu = c(b);
    let opts = QuadOptions {
        abs_tol: 1e-15,
        rel_tol: 1e-13,
        max_evals: 400_000,
    };
    let weight = |u: f64| (x / 4.0 * u * u).exp() * u.powf(a);
    let int_k = integrate_with(
        |u| weight(u) * bessel_k_complex(nu, u).unwrap().re,
        0.0,
        y,
        opts,
    )
    .unwrap()
    .value;
    let int_i = integrate_with(
        |u| weight(u) * bessel_i_complex(nu, u).unwrap().re,
        0.0,
        y,
        opts,
    )
    .unwrap()
    .value;
    let iy = bessel_i_complex(nu, y).unwrap().re;
    let ky = bessel_k_complex(nu, y).unwrap().re;
    let rhs = (a + b + 1.0) * (a - b + 1.0) / y.powf(a + 1.0) * (iy * int_k - ky * int_i);
    (lhs.re, rhs)
}

/// Largest relative gap over the points checked by the tests.
pub fn miller_moskowitz_worst() -> f64 {
    let mut worst: f64 = 0.0;
    for (a, b, x, y) in MILLER_MOSKOWITZ_POINTS {
        let (lhs, rhs) = miller_moskowitz(a, b, x, y);
        worst = worst.max((lhs - rhs).abs() / lhs.abs());
    }
    worst
}

pub const MILLER_MOSKOWITZ_POINTS: [(f64, f64, f64, f64); 4] = [
    (0.0, 0.25, -1.0, 1.5),
    (0.5, 0.3, -2.0, 1.0),
    (1.0, 0.6, 0.5, 2.0),
    (0.0, 0.0, -0.5, 3.0),
];

/// Runs one identity over 100 deterministic draws.
pub fn run_cases<S: Strategy>(
    strategy: S,
    check: impl Fn(S::Value) -> Check,
) -> Result<(), String> {
    let mut runner =
        TestRunner::new_with_rng(config(), TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, check).map_err(|e| e.to_string())
}

pub fn hyp2f2_strategy() -> impl Strategy<Value = (f64, f64, f64, f64, f64)> {
    (
        -3.0..3.0f64,
        -3.0..3.0f64,
        denominator(),
        denominator(),
        -6.0..6.0f64,
    )
}

pub fn pochhammer_strategy() -> impl Strategy<Value = (f64, f64, usize, f64)> {
    (
        -10.0..10.0f64,
        prop_oneof![Just(0.0), -3.0..3.0f64],
        0usize..=20,
        0.0..=1.0f64,
    )
}

pub fn pochhammer_integer_strategy() -> impl Strategy<Value = (i32, usize, f64)> {
    (-12i32..12, 0usize..=20, 0.0..=1.0f64)
}

pub fn whittaker_strategy() -> impl Strategy<Value = (f64, OrderParam, f64)> {
    (-2.0..2.0f64, order(), log_z())
}

pub fn bessel_strategy() -> impl Strategy<Value = (OrderParam, f64)> {
    (order(), log_z())
}

pub fn reflection_strategy() -> impl Strategy<Value = (Complex64, f64)> {
    (reflection_order(), 0.05..5.0f64)
}
