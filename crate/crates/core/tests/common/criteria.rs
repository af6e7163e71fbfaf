//! Measurements behind the acceptance criteria.

use std::time::{Duration, Instant};

use shiryaev_qsd::distribution::{try_qsd_cdf, try_qsd_pdf};
use shiryaev_qsd::laplace::{
    default_step, laplace_bessel, laplace_moment_series, ode_residual, stationary_laplace,
};
use shiryaev_qsd::moments::{
    moment_2f2, moment_powerseries, moment_quadrature, moments_recurrence,
};
use shiryaev_qsd::numerics::integrate;
use shiryaev_qsd::simulate::{compare_to_analytic, simulate, Comparison, EmpiricalQsd, SimConfig};
use shiryaev_qsd::{
    critical_a, lambda_bounds, principal_lambda, stationary_cdf, LaplaceMethod, QsdError,
    QsdParams, SeriesControl,
};

pub const TILDE_A: f64 = 10.240465;

pub fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

pub fn params(a: f64) -> QsdParams {
    QsdParams::for_level(a).unwrap()
}

pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (l, h) = (lo.ln(), hi.ln());
    (0..n)
        .map(|k| (l + (h - l) * k as f64 / (n - 1) as f64).exp())
        .collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

pub fn critical() -> (f64, Duration) {
    let (a, t) = timed(|| critical_a(1e-12).unwrap());
    (a, t)
}

pub struct BoundsReport {
    pub rows: Vec<(f64, f64, f64, f64)>,
    pub all_inside: bool,
    pub decreasing: bool,
}

/// `(A, lo, λ, hi)` on 25 log-spaced levels in `[0.5, 200]`.
pub fn bounds() -> BoundsReport {
    let rows: Vec<_> = log_spaced(0.5, 200.0, 25)
        .into_iter()
        .map(|a| {
            let (lo, hi) = lambda_bounds(a).unwrap();
            (a, lo, principal_lambda(a, 1e-12).unwrap().lambda, hi)
        })
        .collect();
    let all_inside = rows.iter().all(|&(_, lo, l, hi)| lo < l && l < hi);
    let decreasing = rows.windows(2).all(|w| w[1].2 < w[0].2);
    BoundsReport {
        rows,
        all_inside,
        decreasing,
    }
}

/// Worst `|𝔐₁ − (A − 1/λ)| / A` over the analytic routes and worst quadrature
/// relative error, over `A ∈ {1, 5, 20}`.
pub fn first_moment() -> (f64, f64) {
    let (mut analytic, mut quad): (f64, f64) = (0.0, 0.0);
    for a in [1.0, 5.0, 20.0] {
        let p = params(a);
        let target = a - 1.0 / p.lambda();
        for m in [
            moments_recurrence(&p, 1).values[1],
            moment_2f2(&p, 1).unwrap(),
            moment_powerseries(&p, 1).unwrap(),
        ] {
            analytic = analytic.max((m - target).abs() / a);
        }
        quad = quad.max(rel(moment_quadrature(&p, 1).unwrap(), target));
    }
    (analytic, quad)
}

pub const MOMENT_LEVELS: [f64; 6] = [1.0, 3.0, 5.0, 10.0, 30.0, 50.0];

pub struct MomentReport {
    pub triple_spread: f64,
    pub quadrature_spread: f64,
    pub increasing_in_a: bool,
    pub decreasing_in_n_at_1: bool,
    pub increasing_in_n_above_3: bool,
}

pub fn moments() -> MomentReport {
    let mut triple: f64 = 0.0;
    let mut quad: f64 = 0.0;
    let mut table = Vec::new();
    for a in MOMENT_LEVELS {
        let p = params(a);
        let rec = moments_recurrence(&p, 10).values;
        for n in 1..=10 {
            let vals = [
                rec[n],
                moment_2f2(&p, n).unwrap(),
                moment_powerseries(&p, n).unwrap(),
            ];
            for i in 0..3 {
                for j in i + 1..3 {
                    triple = triple.max(rel(vals[i], vals[j]));
                }
            }
            quad = quad.max(rel(moment_quadrature(&p, n).unwrap(), rec[n]));
        }
        table.push(rec);
    }
    let increasing_in_a = (1..=10).all(|n| table.windows(2).all(|w| w[1][n] > w[0][n]));
    let decreasing_in_n_at_1 = table[0][1..].windows(2).all(|w| w[1] < w[0]);
    let increasing_in_n_above_3 = table[1..]
        .iter()
        .all(|r| r[1..].windows(2).all(|w| w[1] > w[0]));
    MomentReport {
        triple_spread: triple,
        quadrature_spread: quad,
        increasing_in_a,
        decreasing_in_n_at_1,
        increasing_in_n_above_3,
    }
}

pub struct DistributionReport {
    pub normalization_error: f64,
    pub pdf_at_a_zero: bool,
    pub cdf_monotone: bool,
    pub fd_error: f64,
}

pub fn distribution() -> DistributionReport {
    let mut normalization_error: f64 = 0.0;
    let mut pdf_at_a_zero = true;
    let mut cdf_monotone = true;
    let mut fd_error: f64 = 0.0;
    for a in [1.0, 5.0, 20.0] {
        let p = params(a);
        let mass = integrate(|x| try_qsd_pdf(&p, x).unwrap(), 0.0, a, 1e-12)
            .unwrap()
            .value;
        normalization_error = normalization_error.max((mass - 1.0).abs());
        pdf_at_a_zero &= try_qsd_pdf(&p, a).unwrap() == 0.0;
        let mut last = 0.0;
        for k in 0..=1000 {
            let q = try_qsd_cdf(&p, a * k as f64 / 1000.0).unwrap();
            cdf_monotone &= q >= last && q <= 1.0;
            last = q;
        }
        for k in 1..100 {
            let x = a * k as f64 / 100.0;
            let h = 1e-5 * a;
            let fd =
                (try_qsd_cdf(&p, x + h).unwrap() - try_qsd_cdf(&p, x - h).unwrap()) / (2.0 * h);
            fd_error = fd_error.max((fd - try_qsd_pdf(&p, x).unwrap()).abs());
        }
    }
    DistributionReport {
        normalization_error,
        pdf_at_a_zero,
        cdf_monotone,
        fd_error,
    }
}

pub const LAPLACE_S: [f64; 3] = [0.1, 1.0, 5.0];
pub const LAPLACE_A: [f64; 3] = [1.0, 5.0, 20.0];

pub struct LaplaceReport {
    pub worst_spread: f64,
    pub min_converged: usize,
    pub worst_ode_residual: f64,
    pub value_at_zero_error: f64,
    pub slope_at_zero_error: f64,
}

/// Pairwise relative spread of the converging routes at one point, and how
/// many converged. Any error other than NonConvergence is a failure.
pub fn laplace_point(p: &QsdParams, s: f64) -> (f64, usize) {
    let mut values = Vec::new();
    for m in LaplaceMethod::ALL {
        match shiryaev_qsd::laplace::laplace(p, s, m) {
            Ok(e) => values.push(e.value),
            Err(QsdError::NonConvergence { .. }) => {}
            Err(e) => panic!("{} failed at s={s}, A={}: {e}", m.name(), p.a()),
        }
    }
    let mut spread: f64 = 0.0;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            spread = spread.max(rel(values[i], values[j]));
        }
    }
    (spread, values.len())
}

/// `𝓛'(0)` by one-sided differences with one Richardson level.
pub fn laplace_slope_at_zero(p: &QsdParams, f: impl Fn(&QsdParams, f64) -> f64) -> f64 {
    let h = 1e-5;
    let d = |h: f64| (f(p, h) - f(p, 0.0)) / h;
    2.0 * d(h / 2.0) - d(h)
}

pub fn laplace() -> LaplaceReport {
    let mut worst_spread: f64 = 0.0;
    let mut min_converged = usize::MAX;
    let mut worst_ode_residual: f64 = 0.0;
    let mut value_at_zero_error: f64 = 0.0;
    let mut slope_at_zero_error: f64 = 0.0;
    for a in LAPLACE_A {
        let p = params(a);
        for s in LAPLACE_S {
            let (spread, n) = laplace_point(&p, s);
            worst_spread = worst_spread.max(spread);
            min_converged = min_converged.min(n);
            let r = ode_residual(&p, s, default_step(s), LaplaceMethod::BesselForm).unwrap();
            worst_ode_residual = worst_ode_residual.max(r.abs());
        }
        for m in LaplaceMethod::ALL {
            let v = shiryaev_qsd::laplace::laplace(&p, 0.0, m).unwrap().value;
            value_at_zero_error = value_at_zero_error.max((v - 1.0).abs());
        }
        let target = 1.0 / p.lambda() - a;
        let ctl = SeriesControl::default();
        let series =
            laplace_slope_at_zero(&p, |p, s| laplace_moment_series(p, s, &ctl).unwrap().value);
        let bessel = laplace_slope_at_zero(&p, |p, s| laplace_bessel(p, s).unwrap().value);
        slope_at_zero_error = slope_at_zero_error
            .max((series - target).abs())
            .max((bessel - target).abs());
    }
    LaplaceReport {
        worst_spread,
        min_converged,
        worst_ode_residual,
        value_at_zero_error,
        slope_at_zero_error,
    }
}

pub const LIMIT_LEVELS: [f64; 4] = [20.0, 50.0, 200.0, 500.0];
/// `|𝓛_Q(1; A=500) − 𝓛_H(1)|` from an independent 25-digit computation.
pub const LIMIT_GAP_500_REFERENCE: f64 = 0.0030747980881588;

pub struct LimitReport {
    pub gaps: Vec<f64>,
    pub monotone: bool,
    pub dominates_stationary: bool,
}

pub fn stationary_limit() -> LimitReport {
    let h = stationary_laplace(1.0).unwrap();
    let gaps: Vec<f64> = LIMIT_LEVELS
        .iter()
        .map(|&a| (laplace_bessel(&params(a), 1.0).unwrap().value - h).abs())
        .collect();
    let monotone = gaps.windows(2).all(|w| w[1] < w[0]);
    let mut dominates_stationary = true;
    for a in [20.0, 50.0] {
        let p = params(a);
        for k in 1..1000 {
            let x = a * k as f64 / 1000.0;
            dominates_stationary &= try_qsd_cdf(&p, x).unwrap() >= stationary_cdf(x);
        }
    }
    LimitReport {
        gaps,
        monotone,
        dominates_stationary,
    }
}

pub struct MonteCarloReport {
    pub empirical: EmpiricalQsd,
    pub comparison: Comparison,
    pub elapsed: Duration,
}

pub fn monte_carlo(cfg: &SimConfig) -> MonteCarloReport {
    let (empirical, elapsed) = timed(|| simulate(cfg).unwrap());
    let comparison = compare_to_analytic(&empirical, &params(cfg.a)).unwrap();
    MonteCarloReport {
        empirical,
        comparison,
        elapsed,
    }
}
