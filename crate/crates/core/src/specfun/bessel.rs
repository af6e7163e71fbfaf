//! Modified Bessel functions `I_ν(x)` and `K_ν(x)` of complex order and real
//! positive argument.
//!
//! `I` is summed from its power series. `K` comes from the trapezoidal rule
//! on `K_ν(x) = ∫₀^∞ e^{-x cosh t} cosh(ν t) dt`, whose integrand is
//! analytic in a strip and decays doubly exponentially, so the rule converges
//! geometrically in the step. That form is even in `ν` by construction.

use num_complex::Complex64;

use crate::complex::{collapse_real, OrderParam};
use crate::error::{QsdError, Result};
use crate::math::{cosh, exp, ln, round, PI};
use crate::series::QUIET_TERMS;

use super::gamma::rgamma;

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(QsdError::EvaluationDomain(
            "modified Bessel functions need z > 0",
        ))
    }
}

/// `I_ν(x)` for complex `ν`.
pub fn bessel_i_complex(nu: Complex64, x: f64) -> Result<Complex64> {
    check_x(x)?;
    // I_{-m} = I_m for integer m; the series below would divide 0 by 0.
    if nu.im == 0.0 && nu.re < 0.0 && nu.re == round(nu.re) {
        return bessel_i_complex(-nu, x);
    }
    const MAX_TERMS: usize = 5_000;
    let quarter = 0.25 * x * x;
    let mut term = (nu * ln(0.5 * x)).exp() * rgamma(nu + 1.0);
    let mut sum = term;
    let mut quiet = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64 + 1.0;
        term *= quarter / (kf * (kf + nu));
        sum += term;
        if kf * kf > quarter && term.norm() <= 1e-17 * sum.norm() {
            quiet += 1;
            if quiet >= QUIET_TERMS {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(QsdError::NonConvergence {
        what: "Bessel I series",
        terms: MAX_TERMS,
    })
}

/// `K_ν(x)` for complex `ν`.
pub fn bessel_k_complex(nu: Complex64, x: f64) -> Result<Complex64> {
    check_x(x)?;
    Ok(bessel_k_scaled(nu, x) * exp(-x))
}

/// `e^x K_ν(x)` by the trapezoidal rule.
pub fn bessel_k_scaled(nu: Complex64, x: f64) -> Complex64 {
    // Strip half-width ~1.2 gives an error near exp(-2π·1.2/h + 1.2|Im ν|).
    let step = (2.4 * PI / (40.0 + 1.2 * nu.im.abs())).min(0.125);
    let growth = nu.re.abs();
    let mut sum = Complex64::new(0.5, 0.0); // t = 0 node, weight 1/2
    let mut k = 1usize;
    loop {
        let t = k as f64 * step;
        let decay = x * (cosh(t) - 1.0);
        let node = (nu * t).cosh() * exp(-decay);
        sum += node;
        if decay - growth * t > 45.0 {
            break;
        }
        k += 1;
    }
    sum * step
}

/// `I_b(z)` for a real or imaginary order (complex when the order is imaginary).
pub fn bessel_i(order: OrderParam, z: f64) -> Result<Complex64> {
    bessel_i_complex(order.as_complex(), z)
}

/// `K_b(z)` for a real or imaginary order (always real).
pub fn bessel_k(order: OrderParam, z: f64) -> Result<f64> {
    collapse_real(bessel_k_complex(order.as_complex(), z)?)
}
