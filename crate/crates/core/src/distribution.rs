//! Quasi-stationary pdf `q_A` and cdf `Q_A`, plus the stationary law
//! `H(x) = e^{-2/x}` of the unabsorbed process.

use crate::complex::OrderParam;
use crate::eigen::{principal_lambda, EigenSolution, DEFAULT_TOL};
use crate::error::{QsdError, Result};
use crate::math::exp;
use crate::specfun::whittaker_w;

/// Largest Whittaker argument `2/x` evaluated; below `x = 2/Z_MAX` the
/// pdf and cdf are zero to double precision.
pub const Z_MAX: f64 = 700.0;

/// Everything the distribution, moment and Laplace routines need.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QsdParams {
    pub eigen: EigenSolution,
    /// `e^{-1/A} W_{0, ξ/2}(2/A)`.
    pub normalizer: f64,
}

impl QsdParams {
    /// Solves for `λ_A` at the default tolerance and builds the parameters.
    pub fn for_level(a: f64) -> Result<Self> {
        make_params(principal_lambda(a, DEFAULT_TOL)?)
    }

    pub fn a(&self) -> f64 {
        self.eigen.a
    }

    pub fn lambda(&self) -> f64 {
        self.eigen.lambda
    }

    /// `ξ/2`.
    pub fn order(&self) -> OrderParam {
        self.eigen.half_order()
    }

    /// The same parameters with `ξ` negated; every formula is even in `ξ`.
    pub fn with_negated_xi(&self) -> Self {
        let mut p = *self;
        p.eigen.xi = p.eigen.xi.negated();
        p
    }
}

/// Builds [`QsdParams`] from a solved eigenvalue.
pub fn make_params(eigen: EigenSolution) -> Result<QsdParams> {
    let a = eigen.a;
    let normalizer = exp(-1.0 / a) * whittaker_w(0.0, eigen.half_order(), 2.0 / a)?;
    if !(normalizer > 0.0 && normalizer.is_finite()) {
        return Err(QsdError::Domain("normalizer is not positive and finite"));
    }
    Ok(QsdParams { eigen, normalizer })
}

fn below_floor(x: f64) -> bool {
    x <= 2.0 / Z_MAX
}

/// `q_A(x)`, or the underlying special-function error.
pub fn try_qsd_pdf(p: &QsdParams, x: f64) -> Result<f64> {
    if !(x > 0.0 && x < p.a()) || below_floor(x) {
        return Ok(0.0);
    }
    let w = whittaker_w(1.0, p.order(), 2.0 / x)?;
    Ok(exp(-1.0 / x) / x * w / p.normalizer)
}

/// `Q_A(x)`, or the underlying special-function error.
pub fn try_qsd_cdf(p: &QsdParams, x: f64) -> Result<f64> {
    if x >= p.a() {
        return Ok(1.0);
    }
    if !(x > 0.0) || below_floor(x) {
        return Ok(0.0);
    }
    let w = whittaker_w(0.0, p.order(), 2.0 / x)?;
    Ok(exp(-1.0 / x) * w / p.normalizer)
}

/// Quasi-stationary density. Zero outside `(0, A)`, exactly zero at `A`.
/// Returns NaN only if a special-function evaluation fails.
pub fn qsd_pdf(p: &QsdParams, x: f64) -> f64 {
    try_qsd_pdf(p, x).unwrap_or(f64::NAN)
}

/// Quasi-stationary cdf. Zero for `x ≤ 0`, one for `x ≥ A`.
pub fn qsd_cdf(p: &QsdParams, x: f64) -> f64 {
    try_qsd_cdf(p, x).unwrap_or(f64::NAN)
}

/// `H(x) = e^{-2/x}` for `x > 0`.
pub fn stationary_cdf(x: f64) -> f64 {
    if x > 0.0 {
        exp(-2.0 / x)
    } else {
        0.0
    }
}

/// `h(x) = (2/x²) e^{-2/x}` for `x > 0`.
pub fn stationary_pdf(x: f64) -> f64 {
    if x > 0.0 {
        2.0 / (x * x) * exp(-2.0 / x)
    } else {
        0.0
    }
}
