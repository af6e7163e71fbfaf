//! The principal eigenvalue `λ_A`: the smallest positive root of
//! `W_{1, ξ(λ)/2}(2/A) = 0` with `ξ(λ) = √(1 - 8λ)`.

use log::warn;

use crate::complex::OrderParam;
use crate::error::{QsdError, Result};
use crate::math::sqrt;
use crate::numerics::{find_root, Bracket};
use crate::specfun::whittaker_w;

/// Default root tolerance on `λ`.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Accepted `|W|` at the root relative to `|W|` at the bracket ends.
pub const RESIDUAL_RATIO: f64 = 1e-9;

/// Bracket searched for the critical level `Ã` at which `λ = 1/8`.
pub const CRITICAL_BRACKET: (f64, f64) = (5.0, 20.0);

/// A solved eigenvalue problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSolution {
    pub a: f64,
    pub lambda: f64,
    pub xi: OrderParam,
    /// `W_{1, ξ/2}(2/A)` at the returned `λ`.
    pub residual: f64,
}

impl EigenSolution {
    /// The Whittaker/Bessel order `ξ/2` (half of `xi`).
    pub fn half_order(&self) -> OrderParam {
        self.xi.half()
    }
}

/// `ξ(λ) = √(1 - 8λ)`: real in `[0, 1)` for `λ ≤ 1/8`, imaginary above.
pub fn xi_of_lambda(lambda: f64) -> Result<OrderParam> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(QsdError::Domain("xi(lambda) needs lambda > 0"));
    }
    let d = 1.0 - 8.0 * lambda;
    Ok(if d >= 0.0 {
        OrderParam::real(sqrt(d))
    } else {
        OrderParam::imaginary(sqrt(-d))
    })
}

fn check_a(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(QsdError::Domain("level A must be positive and finite"))
    }
}

/// Lower and upper bounds on `λ_A`:
/// `1/A + 1/(A + A²) < λ_A < 1/A + (1 + √(4A+1))/(2A²)`.
pub fn lambda_bounds(a: f64) -> Result<(f64, f64)> {
    check_a(a)?;
    let lo = 1.0 / a + 1.0 / (a + a * a);
    let hi = 1.0 / a + (1.0 + sqrt(4.0 * a + 1.0)) / (2.0 * a * a);
    Ok((lo, hi))
}

/// The eigenvalue equation as a function of `λ`.
pub fn eigen_equation(a: f64, lambda: f64) -> Result<f64> {
    let order = xi_of_lambda(lambda)?.half();
    whittaker_w(1.0, order, 2.0 / a)
}

/// Samples on `[lo/4, lo]` used to rule out a smaller root.
const SCREEN_POINTS: usize = 8;

/// Smallest positive root of the eigenvalue equation at level `a`.
///
/// The root is bracketed by [`lambda_bounds`], widened once by a factor two
/// on each side if needed. A coarse scan of `[lo/4, lo]` guards against an
/// earlier sign change.
pub fn principal_lambda(a: f64, tol: f64) -> Result<EigenSolution> {
    check_a(a)?;
    let (mut lo, mut hi) = lambda_bounds(a)?;
    let mut err = None;
    let mut f = |l: f64| match eigen_equation(a, l) {
        Ok(v) => v,
        Err(e) => {
            err.get_or_insert(e);
            f64::NAN
        }
    };
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    if !(f_lo * f_hi < 0.0) {
        warn!("eigenvalue not bracketed by the bounds at A = {a}; widening");
        lo *= 0.5;
        hi *= 2.0;
        f_lo = f(lo);
        f_hi = f(hi);
    }
    let bracket = match Bracket::new(lo, hi, f_lo, f_hi) {
        Ok(b) => b,
        Err(_) => {
            if let Some(e) = err {
                return Err(e);
            }
            return Err(QsdError::BracketFailure { a, lo, hi });
        }
    };
    for k in 0..SCREEN_POINTS {
        let l = lo * (0.25 + 0.75 * k as f64 / SCREEN_POINTS as f64);
        let v = f(l);
        if v * f_lo < 0.0 {
            return Err(QsdError::BracketFailure {
                a,
                lo: lo * 0.25,
                hi: lo,
            });
        }
    }
    // Relative to λ once λ < 1, so small eigenvalues keep their digits.
    let lambda = find_root(&mut f, bracket, tol.max(0.0) * lo.min(1.0))?;
    if let Some(e) = err {
        return Err(e);
    }
    let residual = eigen_equation(a, lambda)?;
    let scale = f_lo.abs().max(f_hi.abs());
    if !(residual.abs() <= RESIDUAL_RATIO * scale) {
        return Err(QsdError::BracketFailure { a, lo, hi });
    }
    Ok(EigenSolution {
        a,
        lambda,
        xi: xi_of_lambda(lambda)?,
        residual,
    })
}

/// The level `Ã` at which `λ_Ã = 1/8`, i.e. the root of `W_{1,0}(2/A)`.
pub fn critical_a(tol: f64) -> Result<f64> {
    let g = |a: f64| whittaker_w(1.0, OrderParam::ZERO, 2.0 / a);
    let (lo, hi) = CRITICAL_BRACKET;
    let (g_lo, g_hi) = (g(lo)?, g(hi)?);
    let bracket = Bracket::new(lo, hi, g_lo, g_hi).map_err(|_| QsdError::BracketFailure {
        a: f64::NAN,
        lo,
        hi,
    })?;
    let mut err = None;
    let root = find_root(
        |a| {
            g(a).unwrap_or_else(|e| {
                err.get_or_insert(e);
                f64::NAN
            })
        },
        bracket,
        tol.max(0.0),
    )?;
    match err {
        Some(e) => Err(e),
        None => Ok(root),
    }
}
