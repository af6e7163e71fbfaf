//! Whittaker functions `M_{κ,μ}(z)` and `W_{κ,μ}(z)` for real `κ`, real or
//! imaginary `μ` and `z > 0`.
//!
//! `W` is evaluated by one of three routes:
//!
//! * the large-`z` asymptotic series, which depends on `μ` only through `μ²`;
//! * the Kummer connection `W = Γ(-2μ)/Γ(½-μ-κ) M_{κ,μ} + Γ(2μ)/Γ(½+μ-κ) M_{κ,-μ}`
//!   for small `z` when `2μ` is not close to an integer;
//! * inward Taylor-series integration of the Whittaker equation
//!   `w'' = (1/4 - κ/z + (μ² - 1/4)/z²) w`, started from the asymptotic
//!   series. `W` is the recessive solution at infinity, so inward integration
//!   is stable. This route also covers the logarithmic case `2μ ∈ ℤ`.
//!
//! The asymptotic and ODE routes are real arithmetic in `μ²`, so
//! `W_{κ,μ} = W_{κ,-μ}` holds bit for bit there.

use num_complex::Complex64;

use crate::complex::{collapse_real, is_nonpositive_integer, OrderParam};
use crate::error::{QsdError, Result};
use crate::math::{exp, ln, powf, round, sqrt};
use crate::series::QUIET_TERMS;

use super::gamma::{gamma, rgamma};

/// Largest `z` handled by the connection formula.
pub const Z_CONNECTION_MAX: f64 = 2.0;
/// Distance of `2μ` from the integers below which the connection formula is
/// abandoned.
pub const INTEGER_ORDER_WINDOW: f64 = 1e-3;
const MAX_CONNECTION_ORDER: f64 = 2.0;
const ASYMPTOTIC_FLOOR: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WRoute {
    Asymptotic,
    Connection,
    InwardOde,
}

/// Value and first derivative of a real function at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueDerivative {
    pub value: f64,
    pub derivative: f64,
}

fn check_z(z: f64) -> Result<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(QsdError::EvaluationDomain("Whittaker functions need z > 0"))
    }
}

/// Kummer `M(a, b, z)` and `M(a+1, b+1, z)` by power series.
fn kummer_pair(a: Complex64, b: Complex64, z: f64) -> Result<(Complex64, Complex64)> {
    Ok((kummer(a, b, z)?, kummer(a + 1.0, b + 1.0, z)?))
}

fn kummer(a: Complex64, b: Complex64, z: f64) -> Result<Complex64> {
    const MAX_TERMS: usize = 20_000;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut quiet = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * z / ((b + kf) * (kf + 1.0));
        sum += term;
        if kf > z && term.norm() <= 1e-17 * sum.norm() {
            quiet += 1;
            if quiet >= QUIET_TERMS {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(QsdError::NonConvergence {
        what: "Kummer M series",
        terms: MAX_TERMS,
    })
}

/// `M_{κ,μ}(z)` and its `z`-derivative for any complex `μ` with
/// `1 + 2μ ∉ {0, -1, ...}`.
pub fn whittaker_m_with_derivative(
    kappa: f64,
    mu: impl Into<Complex64>,
    z: f64,
) -> Result<(Complex64, Complex64)> {
    let mu = mu.into();
    check_z(z)?;
    let b = 1.0 + 2.0 * mu;
    if is_nonpositive_integer(b) {
        return Err(QsdError::ParameterPole("1 + 2b is a nonpositive integer"));
    }
    let a = 0.5 + mu - kappa;
    let (m, m_shift) = kummer_pair(a, b, z)?;
    // e^{-z/2} z^{1/2 + μ}
    let prefactor = ((0.5 + mu) * ln(z) - 0.5 * z).exp();
    let value = prefactor * m;
    let derivative = value * (-0.5 + (0.5 + mu) / z) + prefactor * a / b * m_shift;
    Ok((value, derivative))
}

/// `M_{κ,μ}(z)`. Complex in general; real when `μ` is real.
pub fn whittaker_m(kappa: f64, mu: impl Into<Complex64>, z: f64) -> Result<Complex64> {
    whittaker_m_with_derivative(kappa, mu, z).map(|(m, _)| m)
}

/// Default route choice for `W_{κ,μ}(z)`.
pub fn w_route(kappa: f64, mu: OrderParam, z: f64) -> WRoute {
    let mu2 = mu.squared();
    if z >= asymptotic_start(kappa, mu2) {
        return WRoute::Asymptotic;
    }
    let two_mu = mu.as_complex() * 2.0;
    let gap = (two_mu - round(two_mu.re)).norm();
    if z <= Z_CONNECTION_MAX
        && mu.magnitude() <= MAX_CONNECTION_ORDER
        && gap >= INTEGER_ORDER_WINDOW
    {
        WRoute::Connection
    } else {
        WRoute::InwardOde
    }
}

/// `W_{κ,μ}(z)`, real for real `κ`, `z > 0` and `μ` real or imaginary.
pub fn whittaker_w(kappa: f64, mu: OrderParam, z: f64) -> Result<f64> {
    whittaker_w_with_derivative(kappa, mu, z).map(|w| w.value)
}

pub fn whittaker_w_with_derivative(kappa: f64, mu: OrderParam, z: f64) -> Result<ValueDerivative> {
    check_z(z)?;
    match w_route(kappa, mu, z) {
        // Strongly negative κ can push the smallest asymptotic term above
        // rounding; the ODE route then moves its start point outward.
        WRoute::Asymptotic => {
            asymptotic_at(kappa, mu.squared(), z).or_else(|_| inward_ode(kappa, mu.squared(), z))
        }
        route => whittaker_w_via(route, kappa, mu, z),
    }
}

/// `W` through an explicitly chosen route (used for cross-route checks).
pub fn whittaker_w_via(
    route: WRoute,
    kappa: f64,
    mu: OrderParam,
    z: f64,
) -> Result<ValueDerivative> {
    check_z(z)?;
    match route {
        WRoute::Asymptotic => asymptotic_at(kappa, mu.squared(), z),
        WRoute::Connection => connection(kappa, mu.as_complex(), z),
        WRoute::InwardOde => inward_ode(kappa, mu.squared(), z),
    }
}

fn connection(kappa: f64, mu: Complex64, z: f64) -> Result<ValueDerivative> {
    let (m_plus, dm_plus) = whittaker_m_with_derivative(kappa, mu, z)?;
    let (m_minus, dm_minus) = whittaker_m_with_derivative(kappa, -mu, z)?;
    let c_plus = gamma(-2.0 * mu)? * rgamma(0.5 - mu - kappa);
    let c_minus = gamma(2.0 * mu)? * rgamma(0.5 + mu - kappa);
    let value = c_plus * m_plus + c_minus * m_minus;
    let derivative = c_plus * dm_plus + c_minus * dm_minus;
    Ok(ValueDerivative {
        value: collapse_real(value)?,
        derivative: collapse_real(derivative)?,
    })
}

fn asymptotic_at(kappa: f64, mu2: f64, z: f64) -> Result<ValueDerivative> {
    let series = asymptotic_series(kappa, mu2, z).ok_or(QsdError::NonConvergence {
        what: "Whittaker W asymptotic series",
        terms: ASYMPTOTIC_MAX_TERMS,
    })?;
    let scale = exp(-0.5 * z) * powf(z, kappa);
    Ok(ValueDerivative {
        value: scale * series.s,
        derivative: scale * (series.s * (-0.5 + kappa / z) + series.ds),
    })
}

fn asymptotic_start(kappa: f64, mu2: f64) -> f64 {
    ASYMPTOTIC_FLOOR + 4.0 * mu2.abs() + 4.0 * kappa * kappa
}

const ASYMPTOTIC_MAX_TERMS: usize = 400;

struct AsymptoticSum {
    s: f64,
    ds: f64,
}

/// `S(z) = Σ_k [(½-κ+μ)_k (½-κ-μ)_k / k!] (-1/z)^k` and `S'(z)`.
///
/// `(½-κ+μ)_k (½-κ-μ)_k = Π_{j<k} ((½-κ+j)² - μ²)`, real in `μ²`.
/// Returns `None` if the terms start growing before the sum settles.
fn asymptotic_series(kappa: f64, mu2: f64, z: f64) -> Option<AsymptoticSum> {
    let mut term = 1.0;
    let mut s = 1.0;
    let mut ds = 0.0;
    let mut previous = f64::INFINITY;
    for k in 0..ASYMPTOTIC_MAX_TERMS {
        let shifted = 0.5 - kappa + k as f64;
        term *= -(shifted * shifted - mu2) / ((k as f64 + 1.0) * z);
        let kk = (k + 1) as f64;
        s += term;
        ds -= kk * term / z;
        let size = term.abs();
        if size <= 1e-17 * s.abs() {
            return Some(AsymptoticSum { s, ds });
        }
        if size > previous && size > 1e-14 * s.abs() {
            return None;
        }
        previous = size;
    }
    None
}

/// Inward Taylor-series integration from the asymptotic region.
///
/// The state `(w, w')` carries `e^{z/2}` so that nothing overflows on the
/// way in: the true values are `e^{-z/2} (w, w')` at the current node.
fn inward_ode(kappa: f64, mu2: f64, z: f64) -> Result<ValueDerivative> {
    let mut z0 = asymptotic_start(kappa, mu2);
    let series = loop {
        if let Some(series) = asymptotic_series(kappa, mu2, z0) {
            break series;
        }
        z0 *= 2.0;
        if z0 > 1e6 {
            return Err(QsdError::NonConvergence {
                what: "Whittaker W asymptotic start",
                terms: ASYMPTOTIC_MAX_TERMS,
            });
        }
    };
    if z >= z0 {
        return asymptotic_at(kappa, mu2, z);
    }
    let zk = powf(z0, kappa);
    let mut w = zk * series.s;
    let mut dw = zk * (series.s * (-0.5 + kappa / z0) + series.ds);
    let mut at = z0;
    while at > z {
        let q = 0.25 - kappa / at + (mu2 - 0.25) / (at * at);
        let local = 2.5 / sqrt(q.abs().max(1.0 / 16.0));
        let step = (at - z).min(0.5 * at).min(local);
        let h = -step;
        let (nw, ndw) = taylor_step(kappa, mu2, at, h, w, dw)?;
        let damp = exp(0.5 * h);
        w = nw * damp;
        dw = ndw * damp;
        at = if step == at - z { z } else { at + h };
    }
    let scale = exp(-0.5 * z);
    Ok(ValueDerivative {
        value: scale * w,
        derivative: scale * dw,
    })
}

/// One Taylor step of `z² w'' = (z²/4 - κ z + μ² - 1/4) w` from `z0` to `z0 + h`.
///
/// Works with scaled coefficients `b_n = a_n hⁿ`.
fn taylor_step(kappa: f64, mu2: f64, z0: f64, h: f64, w0: f64, dw0: f64) -> Result<(f64, f64)> {
    const MAX_ORDER: usize = 600;
    let p0 = z0 * z0 / 4.0 - kappa * z0 + mu2 - 0.25;
    let p1 = z0 / 2.0 - kappa;
    let p2 = 0.25;
    let z0sq = z0 * z0;
    let (h2, h3, h4) = (h * h, h * h * h, h * h * h * h);

    // b[n-2], b[n-1], b[n], b[n+1]
    let mut bm2 = 0.0;
    let mut bm1 = 0.0;
    let mut b0 = w0;
    let mut b1 = dw0 * h;
    let mut value = b0 + b1;
    let mut slope = b1; // Σ n b_n = h w'(z0 + h)
    let scale = w0.abs() + (dw0 * h).abs();
    let mut quiet = 0;
    for n in 0..MAX_ORDER {
        let nf = n as f64;
        let next = (h2 * (p0 - nf * (nf - 1.0)) * b0 + p1 * h3 * bm1 + p2 * h4 * bm2
            - 2.0 * z0 * h * (nf + 1.0) * nf * b1)
            / (z0sq * (nf + 2.0) * (nf + 1.0));
        value += next;
        slope += (nf + 2.0) * next;
        bm2 = bm1;
        bm1 = b0;
        b0 = b1;
        b1 = next;
        let tol = 1e-17 * (scale + value.abs());
        if (nf + 2.0) * next.abs() <= tol && (nf + 1.0) * b0.abs() <= tol {
            quiet += 1;
            if quiet >= 2 {
                return Ok((value, slope / h));
            }
        } else {
            quiet = 0;
        }
    }
    Err(QsdError::NonConvergence {
        what: "Whittaker ODE Taylor step",
        terms: MAX_ORDER,
    })
}
