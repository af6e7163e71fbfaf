//! Incomplete Weber integrals `∫_u^∞ e^{-A x²/8} C_b(x) x^{-2} dx`, `C ∈ {I, K}`.

use num_complex::Complex64;

use crate::complex::OrderParam;
use crate::error::{QsdError, Result};
use crate::math::exp;
use crate::numerics::{integrate_with, QuadOptions, QuadResult};

use super::bessel::{bessel_i_complex, bessel_k_scaled};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselKind {
    I,
    K,
}

// Exponents below this contribute nothing in double precision.
const NEGLIGIBLE_EXPONENT: f64 = -745.0;

/// Integrand `e^{-A x²/8} C_b(x) / x²`, computed without overflow.
fn integrand(kind: BesselKind, nu: Complex64, a: f64, x: f64) -> Result<Complex64> {
    let gauss = -a * x * x / 8.0;
    match kind {
        BesselKind::K => {
            let exponent = gauss - x;
            if exponent < NEGLIGIBLE_EXPONENT {
                return Ok(Complex64::new(0.0, 0.0));
            }
            Ok(bessel_k_scaled(nu, x) * (exp(exponent) / (x * x)))
        }
        BesselKind::I => {
            // I_b(x) grows no faster than e^x.
            if gauss + x < NEGLIGIBLE_EXPONENT {
                return Ok(Complex64::new(0.0, 0.0));
            }
            Ok(bessel_i_complex(nu, x)? * (exp(gauss) / (x * x)))
        }
    }
}

/// The integral with default tolerances (1e-11 relative).
pub fn weber_incomplete(
    kind: BesselKind,
    u: f64,
    a: f64,
    order: OrderParam,
) -> Result<QuadResult<Complex64>> {
    let opts = QuadOptions {
        abs_tol: 1e-300,
        rel_tol: 1e-11,
        max_evals: 100_000,
    };
    weber_incomplete_with(kind, u, a, order, opts)
}

/// The integral with explicit quadrature options. Divergent for `u ≤ 0`.
pub fn weber_incomplete_with(
    kind: BesselKind,
    u: f64,
    a: f64,
    order: OrderParam,
    opts: QuadOptions,
) -> Result<QuadResult<Complex64>> {
    if !(u > 0.0) {
        return Err(QsdError::Divergence(
            "incomplete Weber integral diverges at u <= 0",
        ));
    }
    if !(a > 0.0 && a.is_finite()) {
        return Err(QsdError::Domain("incomplete Weber integral needs A > 0"));
    }
    let nu = order.as_complex();
    let mut failure = None;
    let result = integrate_with(
        |x| match integrand(kind, nu, a, x) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        },
        u,
        f64::INFINITY,
        opts,
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(result),
    }
}
