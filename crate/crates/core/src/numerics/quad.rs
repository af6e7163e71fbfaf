//! Adaptive Gauss–Kronrod (7/15) quadrature with global subdivision.
//!
//! A semi-infinite range `[a, ∞)` is mapped onto `[0, 1)` by
//! `x = a + t/(1 - t)`.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{QsdError, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Scalar types the integrator can accumulate.
pub trait QuadValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    const ZERO: Self;
    fn magnitude(self) -> f64;
    fn is_finite_value(self) -> bool;
}

impl QuadValue for f64 {
    const ZERO: Self = 0.0;
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
}

impl QuadValue for Complex64 {
    const ZERO: Self = Complex64::new(0.0, 0.0);
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
}

/// Result of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T = f64> {
    pub value: T,
    pub abs_err_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-11,
            rel_tol: 1e-11,
            max_evals: 200_000,
        }
    }
}

impl QuadOptions {
    /// Same absolute and relative tolerance.
    pub fn tol(tol: f64) -> Self {
        QuadOptions {
            abs_tol: tol,
            rel_tol: tol,
            ..Default::default()
        }
    }
}

struct Piece<T> {
    a: f64,
    b: f64,
    value: T,
    err: f64,
}

fn kronrod<T: QuadValue, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> Piece<T> {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    let mut abs_sum = fc.magnitude() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        let pair = f1 + f2;
        k = k + pair * WGK[j];
        abs_sum += (f1.magnitude() + f2.magnitude()) * WGK[j];
        if j % 2 == 1 {
            g = g + pair * WG[j / 2];
        }
    }
    let value = k * half;
    let raw = (k - g).magnitude() * half.abs();
    // Floor the estimate at rounding level so flat pieces do not look exact.
    let err = raw.max(50.0 * f64::EPSILON * abs_sum * half.abs());
    Piece { a, b, value, err }
}

/// Integrates `f` over `[a, b]`; `b` may be `+∞`.
pub fn integrate_with<T: QuadValue, F: FnMut(f64) -> T>(
    mut f: F,
    a: f64,
    b: f64,
    opts: QuadOptions,
) -> Result<QuadResult<T>> {
    if b == f64::INFINITY {
        let mapped = move |t: f64| {
            let one_minus = 1.0 - t;
            if one_minus <= 0.0 {
                return T::ZERO;
            }
            let x = a + t / one_minus;
            let jac = 1.0 / (one_minus * one_minus);
            let v = f(x);
            if v.magnitude() == 0.0 {
                T::ZERO
            } else {
                v * jac
            }
        };
        return adaptive(mapped, 0.0, 1.0, opts);
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(QsdError::Domain(
            "integration limits must be finite or +inf",
        ));
    }
    if a == b {
        return Ok(QuadResult {
            value: T::ZERO,
            abs_err_estimate: 0.0,
            evaluations: 0,
        });
    }
    adaptive(f, a, b, opts)
}

fn adaptive<T: QuadValue, F: FnMut(f64) -> T>(
    mut f: F,
    a: f64,
    b: f64,
    opts: QuadOptions,
) -> Result<QuadResult<T>> {
    let mut pieces: Vec<Piece<T>> = Vec::new();
    pieces.push(kronrod(&mut f, a, b));
    let mut evaluations = 15usize;
    let mut best: Option<(T, f64)> = None;
    loop {
        let mut total = T::ZERO;
        let mut err = 0.0;
        for p in &pieces {
            total = total + p.value;
            err += p.err;
        }
        if !total.is_finite_value() || !err.is_finite() {
            return Err(QsdError::NonConvergence {
                what: "quadrature (non-finite integrand)",
                terms: evaluations,
            });
        }
        if best.is_none_or(|(_, e)| err <= e) {
            best = Some((total, err));
        }
        let target = opts.abs_tol.max(opts.rel_tol * total.magnitude());
        if err <= target {
            return Ok(QuadResult {
                value: total,
                abs_err_estimate: err,
                evaluations,
            });
        }
        if evaluations + 30 > opts.max_evals {
            return exhausted(best.unwrap_or((total, err)), evaluations, opts);
        }
        // Split the piece with the largest error; ties go to the leftmost.
        let mut worst = 0;
        for (i, p) in pieces.iter().enumerate() {
            if p.err > pieces[worst].err {
                worst = i;
            }
        }
        let p = pieces.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if !(mid > p.a.min(p.b) && mid < p.a.max(p.b)) {
            return exhausted(best.unwrap_or((total, err)), evaluations, opts);
        }
        pieces.push(kronrod(&mut f, p.a, mid));
        pieces.push(kronrod(&mut f, mid, p.b));
        evaluations += 30;
    }
}

fn exhausted<T: QuadValue>(
    best: (T, f64),
    evaluations: usize,
    opts: QuadOptions,
) -> Result<QuadResult<T>> {
    let (value, abs_err) = best;
    if abs_err <= opts.abs_tol.max(opts.rel_tol * value.magnitude()) {
        Ok(QuadResult {
            value,
            abs_err_estimate: abs_err,
            evaluations,
        })
    } else {
        Err(QsdError::QuadratureBudget {
            abs_err,
            evaluations,
        })
    }
}

/// Integrates a real function with absolute and relative tolerance `tol`.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    integrate_with(f, a, b, QuadOptions::tol(tol))
}

/// Integrates a complex-valued function of a real variable.
pub fn integrate_complex<F: FnMut(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadResult<Complex64>> {
    integrate_with(f, a, b, QuadOptions::tol(tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::exp;

    #[test]
    fn simple_integrals() {
        let r = integrate(|x| x, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 0.5).abs() < 1e-15);
        let r = integrate(|t| exp(-t), 0.0, f64::INFINITY, 1e-11).unwrap();
        assert!((r.value - 1.0).abs() < 1e-11, "{}", r.value);
        assert!(r.abs_err_estimate >= 0.0);
    }

    #[test]
    fn exact_on_polynomials() {
        // The 7-point Gauss rule is exact to degree 13, so both rules agree
        // and a single panel is accepted.
        let r = integrate(|x| x.powi(13) - 3.0 * x.powi(7), -1.0, 2.0, 1e-12).unwrap();
        let exact = (2f64.powi(14) - 1.0) / 14.0 - 3.0 * (256.0 - 1.0) / 8.0;
        assert!((r.value - exact).abs() <= 1e-13 * exact.abs());
        assert_eq!(r.evaluations, 15);
        // Kronrod alone is exact to degree 22.
        let r = integrate(|x| x.powi(22), -1.0, 2.0, 1e-12).unwrap();
        let exact = (2f64.powi(23) + 1.0) / 23.0;
        assert!((r.value - exact).abs() <= 1e-13 * exact);
    }

    #[test]
    fn reversed_limits() {
        let r = integrate(|x| x * x, 1.0, 0.0, 1e-12).unwrap();
        assert!((r.value + 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn complex_integrand() {
        let r = integrate_complex(|x| Complex64::new(x.cos(), x.sin()), 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - Complex64::new(1f64.sin(), 1.0 - 1f64.cos())).norm() < 1e-14);
    }

    #[test]
    fn larger_budget_never_raises_estimate() {
        let f = |x: f64| (50.0 * x).sin().abs().sqrt();
        let mut last = f64::INFINITY;
        for budget in [60, 120, 240, 480, 960, 1920] {
            let opts = QuadOptions {
                abs_tol: 1e-300,
                rel_tol: 0.0,
                max_evals: budget,
            };
            let est = match integrate_with(f, 0.0, 1.0, opts) {
                Ok(r) => r.abs_err_estimate,
                Err(QsdError::QuadratureBudget { abs_err, .. }) => abs_err,
                Err(e) => panic!("{e}"),
            };
            assert!(est <= last);
            last = est;
        }
    }
}
