//! Laplace transform `𝓛_Q(s) = ∫₀^A e^{-sx} q_A(x) dx` by five routes:
//! direct quadrature, the moment series, two Kampé de Fériet forms and the
//! closed Bessel form.

use num_complex::Complex64;

use crate::complex::collapse_real;
use crate::distribution::{try_qsd_pdf, QsdParams};
use crate::error::{QsdError, Result};
use crate::math::{exp, sqrt};
use crate::numerics::{integrate_with, QuadOptions};
use crate::series::SeriesControl;
use crate::specfun::{bessel_i, bessel_k, kampe_de_feriet, weber_incomplete_with, BesselKind};

/// Series routes report non-convergence once rounding (`eps · Σ|term|`)
/// or truncation could exceed this fraction of the value.
pub const CANCELLATION_LIMIT: f64 = 1e-9;
/// Below this `s` the second Kampé de Fériet form defers to the moment series.
pub const KDF2_SMALL_S: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LaplaceMethod {
    MomentSeries,
    KdF1,
    KdF2,
    BesselForm,
    Quadrature,
}

impl LaplaceMethod {
    pub const ALL: [LaplaceMethod; 5] = [
        LaplaceMethod::MomentSeries,
        LaplaceMethod::KdF1,
        LaplaceMethod::KdF2,
        LaplaceMethod::BesselForm,
        LaplaceMethod::Quadrature,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            LaplaceMethod::MomentSeries => "moment_series",
            LaplaceMethod::KdF1 => "kdf1",
            LaplaceMethod::KdF2 => "kdf2",
            LaplaceMethod::BesselForm => "bessel",
            LaplaceMethod::Quadrature => "quadrature",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceEval {
    pub s: f64,
    pub a: f64,
    pub value: f64,
    pub method: LaplaceMethod,
    pub err_estimate: f64,
}

fn check_s(s: f64) -> Result<()> {
    if s >= 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(QsdError::Domain(
            "Laplace argument s must be finite and nonnegative",
        ))
    }
}

fn eval(
    p: &QsdParams,
    s: f64,
    value: f64,
    method: LaplaceMethod,
    err_estimate: f64,
) -> LaplaceEval {
    LaplaceEval {
        s,
        a: p.a(),
        value,
        method,
        err_estimate,
    }
}

/// Dispatches to one route with default settings.
pub fn laplace(p: &QsdParams, s: f64, method: LaplaceMethod) -> Result<LaplaceEval> {
    let ctl = SeriesControl::default();
    match method {
        LaplaceMethod::MomentSeries => laplace_moment_series(p, s, &ctl),
        LaplaceMethod::KdF1 => laplace_kdf1(p, s, &ctl),
        LaplaceMethod::KdF2 => laplace_kdf2(p, s, &ctl),
        LaplaceMethod::BesselForm => laplace_bessel(p, s),
        LaplaceMethod::Quadrature => laplace_quadrature(p, s),
    }
}

/// Default quadrature settings for the integral routes.
pub const QUAD: QuadOptions = QuadOptions {
    abs_tol: 1e-300,
    rel_tol: 1e-11,
    max_evals: 100_000,
};
/// Tighter settings used when a route is differentiated numerically.
pub const QUAD_FINE: QuadOptions = QuadOptions {
    abs_tol: 1e-300,
    rel_tol: 1e-13,
    max_evals: 400_000,
};

/// `∫₀^A e^{-sx} q_A(x) dx` by adaptive quadrature.
pub fn laplace_quadrature(p: &QsdParams, s: f64) -> Result<LaplaceEval> {
    laplace_quadrature_with(p, s, QUAD)
}

pub fn laplace_quadrature_with(p: &QsdParams, s: f64, opts: QuadOptions) -> Result<LaplaceEval> {
    check_s(s)?;
    let mut failure = None;
    let r = integrate_with(
        |x| match try_qsd_pdf(p, x) {
            Ok(q) => q * exp(-s * x),
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        0.0,
        p.a(),
        opts,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(eval(
        p,
        s,
        r.value,
        LaplaceMethod::Quadrature,
        r.abs_err_estimate,
    ))
}

/// `Σ (-s)ⁿ 𝔐_n / n!`, with the moments generated on the fly as
/// `m_n = 𝔐_n / Aⁿ` so each term is `m_n (-sA)ⁿ / n!`.
pub fn laplace_moment_series(p: &QsdParams, s: f64, ctl: &SeriesControl) -> Result<LaplaceEval> {
    check_s(s)?;
    let (a, lambda) = (p.a(), p.lambda());
    let x = -s * a;
    let mut scaled = 1.0;
    let mut power = 1.0; // (-sA)ⁿ / n!
    let mut sum = 1.0;
    let mut magnitude = 1.0;
    let mut quiet = 0;
    for n in 1..=ctl.max_terms {
        let nf = n as f64;
        scaled = (lambda - nf * scaled / a) / (0.5 * nf * (nf - 1.0) + lambda);
        power *= x / nf;
        let term = scaled * power;
        sum += term;
        magnitude += term.abs();
        if !magnitude.is_finite() {
            break;
        }
        if nf > x.abs() && term.abs() <= ctl.rel_tol * sum.abs() {
            quiet += 1;
            if quiet >= crate::series::QUIET_TERMS {
                let err = 2.0 * term.abs() + f64::EPSILON * magnitude;
                if err > CANCELLATION_LIMIT * sum.abs() {
                    break;
                }
                return Ok(eval(p, s, sum, LaplaceMethod::MomentSeries, err));
            }
        } else {
            quiet = 0;
        }
    }
    Err(QsdError::NonConvergence {
        what: "Laplace moment series",
        terms: ctl.max_terms,
    })
}

#[allow(clippy::too_many_arguments)]
fn kdf_value(
    a1: Complex64,
    a2: Complex64,
    b1: Complex64,
    b2: Complex64,
    u: f64,
    v: f64,
    ctl: &SeriesControl,
    what: &'static str,
) -> Result<(f64, f64)> {
    let r = kampe_de_feriet(a1, a2, b1, b2, u, v, ctl)?;
    let value = collapse_real(r.value)?;
    if r.abs_err > CANCELLATION_LIMIT * value.abs() {
        return Err(QsdError::NonConvergence {
            what,
            terms: r.terms,
        });
    }
    Ok((value, r.abs_err))
}

/// `F^{0:2;1}_{2:0;0}` with numerators `-½ ∓ ξ/2`, denominators `½ ∓ ξ/2`
/// and arguments `(-sA, 2s)`.
pub fn laplace_kdf1(p: &QsdParams, s: f64, ctl: &SeriesControl) -> Result<LaplaceEval> {
    check_s(s)?;
    let h = p.order().as_complex();
    let (value, err) = kdf_value(
        -0.5 - h,
        -0.5 + h,
        0.5 - h,
        0.5 + h,
        -s * p.a(),
        2.0 * s,
        ctl,
        "Laplace KdF1 series",
    )?;
    Ok(eval(p, s, value, LaplaceMethod::KdF1, err))
}

/// `(λ/s) (F[-½ ∓ ξ/2; -½ ∓ ξ/2; -sA, 2s] - e^{-sA})`.
pub fn laplace_kdf2(p: &QsdParams, s: f64, ctl: &SeriesControl) -> Result<LaplaceEval> {
    check_s(s)?;
    if s < KDF2_SMALL_S {
        let m = laplace_moment_series(p, s, ctl)?;
        return Ok(LaplaceEval {
            method: LaplaceMethod::KdF2,
            ..m
        });
    }
    let h = p.order().as_complex();
    let (f, err) = kdf_value(
        -0.5 - h,
        -0.5 + h,
        -0.5 - h,
        -0.5 + h,
        -s * p.a(),
        2.0 * s,
        ctl,
        "Laplace KdF2 series",
    )?;
    let scale = p.lambda() / s;
    let diff = f - exp(-s * p.a());
    let value = scale * diff;
    let err = scale * (err + f64::EPSILON * f.abs());
    if err > CANCELLATION_LIMIT * value.abs() {
        return Err(QsdError::NonConvergence {
            what: "Laplace KdF2 difference",
            terms: 0,
        });
    }
    Ok(eval(p, s, value, LaplaceMethod::KdF2, err))
}

/// The closed Bessel form with `u = 2√(2s)`:
/// `u K_ξ(u)/C + 8λ [u K_ξ(u) J_I(u) - u I_ξ(u) J_K(u)]`,
/// `J_C(u) = ∫_u^∞ e^{-Ax²/8} C_ξ(x) x⁻² dx` and `C` the normalizer.
pub fn laplace_bessel(p: &QsdParams, s: f64) -> Result<LaplaceEval> {
    laplace_bessel_with(p, s, QUAD)
}

pub fn laplace_bessel_with(p: &QsdParams, s: f64, opts: QuadOptions) -> Result<LaplaceEval> {
    check_s(s)?;
    if s == 0.0 {
        return Ok(eval(p, s, 1.0, LaplaceMethod::BesselForm, 0.0));
    }
    let xi = p.eigen.xi;
    let (a, lambda) = (p.a(), p.lambda());
    let u = 2.0 * sqrt(2.0 * s);
    let k = bessel_k(xi, u)?;
    let i = bessel_i(xi, u)?;
    let jk = weber_incomplete_with(BesselKind::K, u, a, xi, opts)?;
    let ji = weber_incomplete_with(BesselKind::I, u, a, xi, opts)?;
    let bracket = ji.value * (u * k) - jk.value * (i * u);
    let value = collapse_real(bracket * (8.0 * lambda) + u * k / p.normalizer)?;
    let err =
        8.0 * lambda * (u * k.abs() * ji.abs_err_estimate + u * i.norm() * jk.abs_err_estimate)
            + f64::EPSILON * (u * k / p.normalizer).abs();
    Ok(eval(p, s, value, LaplaceMethod::BesselForm, err))
}

/// `𝓛_H(s) = 2√(2s) K₁(2√(2s))`, the transform of the stationary law.
pub fn stationary_laplace(s: f64) -> Result<f64> {
    check_s(s)?;
    if s == 0.0 {
        return Ok(1.0);
    }
    let u = 2.0 * sqrt(2.0 * s);
    Ok(u * bessel_k(crate::complex::OrderParam::real(1.0), u)?)
}

/// `(s²/2) L''(s) - (s - λ) L(s) - λ e^{-sA}` for an arbitrary `L`, with
/// `L''` from central differences at `h` and `h/2` combined by one
/// Richardson step.
pub fn ode_residual_of<F: FnMut(f64) -> Result<f64>>(
    p: &QsdParams,
    s: f64,
    h: f64,
    mut l: F,
) -> Result<f64> {
    if !(s > 0.0 && h > 0.0 && h < s) {
        return Err(QsdError::Domain("ODE residual needs 0 < h < s"));
    }
    let centre = l(s)?;
    let second =
        |l: &mut F, h: f64| -> Result<f64> { Ok((l(s + h)? - 2.0 * centre + l(s - h)?) / (h * h)) };
    let coarse = second(&mut l, h)?;
    let fine = second(&mut l, 0.5 * h)?;
    let d2 = (4.0 * fine - coarse) / 3.0;
    let lambda = p.lambda();
    Ok(0.5 * s * s * d2 - (s - lambda) * centre - lambda * exp(-s * p.a()))
}

/// ODE residual of one route. Integral routes run at tightened tolerance so
/// that adaptive noise does not swamp the second difference.
pub fn ode_residual(p: &QsdParams, s: f64, h: f64, method: LaplaceMethod) -> Result<f64> {
    let ctl = SeriesControl::default();
    ode_residual_of(p, s, h, |t| {
        Ok(match method {
            LaplaceMethod::BesselForm => laplace_bessel_with(p, t, QUAD_FINE)?.value,
            LaplaceMethod::Quadrature => laplace_quadrature_with(p, t, QUAD_FINE)?.value,
            LaplaceMethod::MomentSeries => laplace_moment_series(p, t, &ctl)?.value,
            LaplaceMethod::KdF1 => laplace_kdf1(p, t, &ctl)?.value,
            LaplaceMethod::KdF2 => laplace_kdf2(p, t, &ctl)?.value,
        })
    })
}

/// The step used by default: `1e-4 · max(1, s)`.
pub fn default_step(s: f64) -> f64 {
    1e-4 * s.max(1.0)
}
