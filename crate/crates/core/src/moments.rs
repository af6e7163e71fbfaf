//! Moments `𝔐_n = E[Z^n]` of the quasi-stationary law by four routes.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::complex::collapse_real;
use crate::distribution::{try_qsd_pdf, QsdParams};
use crate::error::{QsdError, Result};
use crate::math::powi;
use crate::numerics::{integrate_with, QuadOptions};
use crate::series::SeriesControl;
use crate::specfun::hyp2f2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MomentMethod {
    Recurrence,
    ClosedForm2F2,
    PowerSeries,
    Quadrature,
}

impl MomentMethod {
    pub const ALL: [MomentMethod; 4] = [
        MomentMethod::Recurrence,
        MomentMethod::ClosedForm2F2,
        MomentMethod::PowerSeries,
        MomentMethod::Quadrature,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            MomentMethod::Recurrence => "recurrence",
            MomentMethod::ClosedForm2F2 => "2f2",
            MomentMethod::PowerSeries => "powerseries",
            MomentMethod::Quadrature => "quadrature",
        }
    }
}

/// `𝔐_0 ..= 𝔐_{n_max}` computed by one method.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSeries {
    pub params: QsdParams,
    pub n_max: usize,
    pub values: Vec<f64>,
    pub method: MomentMethod,
}

impl MomentSeries {
    pub fn compute(p: &QsdParams, n_max: usize, method: MomentMethod) -> Result<Self> {
        let values = match method {
            MomentMethod::Recurrence => recurrence_values(p, n_max),
            _ => (0..=n_max)
                .map(|n| match method {
                    MomentMethod::ClosedForm2F2 => moment_2f2(p, n),
                    MomentMethod::PowerSeries => moment_powerseries(p, n),
                    _ => moment_quadrature(p, n),
                })
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(MomentSeries {
            params: *p,
            n_max,
            values,
            method,
        })
    }
}

/// Moments from `(n(n-1)/2 + λ) 𝔐_n + n 𝔐_{n-1} = λ Aⁿ`, `𝔐_0 = 1`.
pub fn moments_recurrence(p: &QsdParams, n_max: usize) -> MomentSeries {
    MomentSeries {
        params: *p,
        n_max,
        values: recurrence_values(p, n_max),
        method: MomentMethod::Recurrence,
    }
}

/// The recurrence is run on `m_n = 𝔐_n / Aⁿ`, which stays in `(0, 1]`.
fn recurrence_values(p: &QsdParams, n_max: usize) -> Vec<f64> {
    let (a, lambda) = (p.a(), p.lambda());
    let mut values = Vec::with_capacity(n_max + 1);
    let mut scaled = 1.0;
    values.push(1.0);
    for n in 1..=n_max {
        let nf = n as f64;
        scaled = (lambda - nf * scaled / a) / (0.5 * nf * (nf - 1.0) + lambda);
        values.push(scaled * powi(a, n as i32));
    }
    values
}

/// Residual of the recurrence at `n ≥ 1`, relative to `λ Aⁿ`.
pub fn recurrence_residual(p: &QsdParams, values: &[f64], n: usize) -> f64 {
    let (a, lambda) = (p.a(), p.lambda());
    let nf = n as f64;
    let rhs = lambda * powi(a, n as i32);
    let lhs = (0.5 * nf * (nf - 1.0) + lambda) * values[n] + nf * values[n - 1];
    (lhs - rhs).abs() / rhs.abs()
}

/// `𝔐_n = 2λAⁿ/(n(n-1) + 2λ) · ₂F₂[1, -n; 3/2 + ξ/2 - n, 3/2 - ξ/2 - n; 2/A]`.
pub fn moment_2f2(p: &QsdParams, n: usize) -> Result<f64> {
    let (a, lambda) = (p.a(), p.lambda());
    let nf = n as f64;
    let half_xi = p.order().as_complex();
    let f = hyp2f2(
        Complex64::new(1.0, 0.0),
        Complex64::new(-nf, 0.0),
        1.5 + half_xi - nf,
        1.5 - half_xi - nf,
        Complex64::new(2.0 / a, 0.0),
        &SeriesControl::default(),
    )?;
    let prefactor = 2.0 * lambda * powi(a, n as i32) / (nf * (nf - 1.0) + 2.0 * lambda);
    collapse_real(f.value * prefactor)
}

/// The explicit finite sum
/// `𝔐_n = (-2)ⁿ n! / ((½+ξ/2)_n (½-ξ/2)_n) · Σ_k (-½+ξ/2)_k (-½-ξ/2)_k (-A/2)^k / k!`.
///
/// The two Pochhammer symbols of each pair have conjugate (or real)
/// parameters, so each pair is multiplied out before it enters the sum.
pub fn moment_powerseries(p: &QsdParams, n: usize) -> Result<f64> {
    let half_xi = p.order().as_complex();
    let pair = |c: Complex64, j: usize| -> Result<f64> {
        let j = j as f64;
        collapse_real((c + half_xi + j) * (c - half_xi + j))
    };
    let x = -0.5 * p.a();
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        term *= pair(Complex64::new(-0.5, 0.0), k)? * x / (k as f64 + 1.0);
        sum += term;
    }
    let mut prefactor = 1.0;
    for j in 0..n {
        prefactor *= -2.0 * (j as f64 + 1.0) / pair(Complex64::new(0.5, 0.0), j)?;
    }
    Ok(prefactor * sum)
}

/// `∫₀^A xⁿ q_A(x) dx`.
pub fn moment_quadrature(p: &QsdParams, n: usize) -> Result<f64> {
    let mut failure = None;
    let opts = QuadOptions {
        abs_tol: 1e-300,
        rel_tol: 1e-12,
        max_evals: 50_000,
    };
    let r = integrate_with(
        |x| match try_qsd_pdf(p, x) {
            Ok(q) => q * powi(x, n as i32),
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        0.0,
        p.a(),
        opts,
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(r.value),
    }
}

/// `Var[Z] = (λ - (Aλ - 1)²) / (λ² (1 + λ))`.
pub fn variance(p: &QsdParams) -> Result<f64> {
    let (a, l) = (p.a(), p.lambda());
    let v = (l - (a * l - 1.0) * (a * l - 1.0)) / (l * l * (1.0 + l));
    if v > 0.0 {
        Ok(v)
    } else {
        Err(QsdError::Domain("variance closed form is not positive"))
    }
}
