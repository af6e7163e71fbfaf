//! Euler–Maruyama simulation of `dR = dt + R dB` on `[0, A)` with
//! absorption at `A`.
//!
//! Each path has its own ChaCha8 stream selected by `(seed, path index)`, so
//! paths can be run in any order or in parallel and then aggregated with
//! [`EmpiricalQsd::from_outcomes`] into bitwise-identical results.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

use crate::distribution::{qsd_cdf, QsdParams};
use crate::eigen::lambda_bounds;
use crate::error::{QsdError, Result};
use crate::math::{ln, round, sqrt};

pub const DEFAULT_DT: f64 = 1e-4;
pub const DEFAULT_PATHS: usize = 200_000;
pub const DEFAULT_BINS: usize = 64;
/// Survival is recorded on this many equally spaced times in `(0, T]`.
pub const SURVIVAL_POINTS: usize = 200;
/// Expected survivors the default horizon aims for.
pub const TARGET_SURVIVORS: f64 = 5_000.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub a: f64,
    pub r0: f64,
    pub dt: f64,
    pub horizon: f64,
    pub paths: usize,
    pub seed: u64,
    pub bins: usize,
    /// Standard normals summed (and rescaled) into each step's increment.
    /// Running `dt` with 2 and `dt/2` with 1 drives both runs with the same
    /// Brownian path.
    pub substeps: u32,
}

impl SimConfig {
    /// Defaults: `r0 = 0`, `dt = 1e-4`, `2·10⁵` paths, 64 bins and the
    /// horizon from [`default_horizon`].
    pub fn new(a: f64, seed: u64) -> Result<Self> {
        let horizon = default_horizon(a, DEFAULT_PATHS)?;
        Ok(SimConfig {
            a,
            r0: 0.0,
            dt: DEFAULT_DT,
            horizon,
            paths: DEFAULT_PATHS,
            seed,
            bins: DEFAULT_BINS,
            substeps: 1,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.paths == 0 {
            return Err(QsdError::Config("paths must be positive"));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(QsdError::Config("dt must be positive"));
        }
        if !(self.a > 0.0) {
            return Err(QsdError::Config("A must be positive"));
        }
        if !(self.r0 >= 0.0 && self.r0 < self.a) {
            return Err(QsdError::Config("r0 must lie in [0, A)"));
        }
        if !(self.horizon.is_finite() && self.horizon >= 2.0 * self.dt) {
            return Err(QsdError::Config(
                "horizon must be finite and at least two steps",
            ));
        }
        if self.bins == 0 || self.substeps == 0 {
            return Err(QsdError::Config("bins and substeps must be positive"));
        }
        Ok(())
    }

    pub fn steps(&self) -> u64 {
        round(self.horizon / self.dt) as u64
    }
}

/// A horizon at which about [`TARGET_SURVIVORS`] of `paths` are still
/// alive: `ln(paths / target) / hi`, with `hi` the upper bound on `λ_A`,
/// capped at `20 / lo`.
pub fn default_horizon(a: f64, paths: usize) -> Result<f64> {
    let (lo, hi) = lambda_bounds(a)?;
    let ratio = (paths as f64 / TARGET_SURVIVORS).max(2.0);
    Ok((ln(ratio) / hi).min(20.0 / lo))
}

/// What happened to one path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathOutcome {
    /// Step index at which the path reached `A`, if it did.
    pub absorbed_step: Option<u64>,
    /// Position at `T/2` (NaN if absorbed by then).
    pub at_half: f64,
    /// Position at `T` (NaN if absorbed).
    pub at_end: f64,
}

fn path_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn increment(rng: &mut ChaCha8Rng, substeps: u32, scale: f64) -> f64 {
    let mut z = 0.0;
    for _ in 0..substeps {
        let n: f64 = StandardNormal.sample(rng);
        z += n;
    }
    z * scale
}

/// Runs path `index` of `cfg`.
pub fn simulate_path(cfg: &SimConfig, index: u64) -> PathOutcome {
    let mut rng = path_rng(cfg.seed, index);
    let steps = cfg.steps();
    let half = steps / 2;
    let sdt = sqrt(cfg.dt);
    let scale = sdt / sqrt(cfg.substeps as f64);
    let mut r = cfg.r0;
    let mut at_half = if half == 0 { r } else { f64::NAN };
    for step in 1..=steps {
        r += cfg.dt + r * increment(&mut rng, cfg.substeps, scale);
        if r >= cfg.a {
            return PathOutcome {
                absorbed_step: Some(step),
                at_half,
                at_end: f64::NAN,
            };
        }
        if r < 0.0 {
            r = 0.0;
        }
        if step == half {
            at_half = r;
        }
    }
    PathOutcome {
        absorbed_step: None,
        at_half,
        at_end: r,
    }
}

/// Empirical quasi-stationary law and absorption rate.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalQsd {
    pub config: SimConfig,
    pub bin_edges: Vec<f64>,
    /// Survivor density at `T`, normalized over the bins.
    pub conditional_density: Vec<f64>,
    /// Survivor density at `T/2`.
    pub conditional_density_half: Vec<f64>,
    /// `(t, fraction alive)` on a uniform grid of `(0, T]`.
    pub survival: Vec<(f64, f64)>,
    /// Least-squares decay rate of `ln S(t)` over `[T/2, T]`.
    pub lambda_hat: f64,
    /// `λ̂ / √D` with `D` the absorptions inside the fit window.
    pub lambda_hat_stderr: f64,
    /// Coefficient of determination of the log-linear fit.
    pub r_squared: f64,
    /// Sorted survivor positions at `T`.
    pub survivors: Vec<f64>,
    /// Sorted survivor positions at `T/2`.
    pub survivors_half: Vec<f64>,
}

fn histogram(values: &[f64], edges: &[f64]) -> Vec<f64> {
    let bins = edges.len() - 1;
    let (lo, hi) = (edges[0], edges[bins]);
    let mut counts = vec![0u64; bins];
    for &v in values {
        let k = (((v - lo) / (hi - lo)) * bins as f64) as usize;
        counts[k.min(bins - 1)] += 1;
    }
    let width = (hi - lo) / bins as f64;
    let n = values.len().max(1) as f64;
    counts.iter().map(|&c| c as f64 / (n * width)).collect()
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.total_cmp(b));
    v
}

impl EmpiricalQsd {
    /// Aggregates per-path outcomes, which must be in path-index order.
    pub fn from_outcomes(cfg: &SimConfig, outcomes: &[PathOutcome]) -> Result<Self> {
        cfg.validate()?;
        if outcomes.len() != cfg.paths {
            return Err(QsdError::Config(
                "outcome count differs from configured paths",
            ));
        }
        let steps = cfg.steps();
        let survivors = sorted(
            outcomes
                .iter()
                .filter(|o| o.absorbed_step.is_none())
                .map(|o| o.at_end)
                .collect(),
        );
        if survivors.is_empty() {
            return Err(QsdError::AllAbsorbed);
        }
        let survivors_half = sorted(
            outcomes
                .iter()
                .filter(|o| !o.at_half.is_nan())
                .map(|o| o.at_half)
                .collect(),
        );

        // Absorption counts per step, then survival on the recording grid.
        let mut absorbed: Vec<u64> = outcomes.iter().filter_map(|o| o.absorbed_step).collect();
        absorbed.sort_unstable();
        let n = cfg.paths as f64;
        let mut survival = Vec::with_capacity(SURVIVAL_POINTS);
        let mut grid_steps = Vec::with_capacity(SURVIVAL_POINTS);
        let mut cursor = 0usize;
        for k in 1..=SURVIVAL_POINTS {
            let step = (steps * k as u64) / SURVIVAL_POINTS as u64;
            while cursor < absorbed.len() && absorbed[cursor] <= step {
                cursor += 1;
            }
            let alive = (cfg.paths - cursor) as f64;
            survival.push((step as f64 * cfg.dt, alive / n));
            grid_steps.push(step);
        }

        // Log-linear fit over the second half.
        let window: Vec<(f64, f64)> = survival
            .iter()
            .filter(|(t, s)| *t >= 0.5 * cfg.horizon && *s > 0.0)
            .map(|&(t, s)| (t, ln(s)))
            .collect();
        let m = window.len() as f64;
        let (mut st, mut sy) = (0.0, 0.0);
        for &(t, y) in &window {
            st += t;
            sy += y;
        }
        let (tbar, ybar) = (st / m, sy / m);
        let (mut stt, mut sty, mut syy) = (0.0, 0.0, 0.0);
        for &(t, y) in &window {
            stt += (t - tbar) * (t - tbar);
            sty += (t - tbar) * (y - ybar);
            syy += (y - ybar) * (y - ybar);
        }
        let slope = sty / stt;
        let r_squared = if syy > 0.0 {
            sty * sty / (stt * syy)
        } else {
            1.0
        };
        let lambda_hat = -slope;
        let half_step = steps / 2;
        let events = absorbed.iter().filter(|&&s| s > half_step).count().max(1) as f64;
        let lambda_hat_stderr = lambda_hat.abs() / sqrt(events);

        let bins = cfg.bins;
        let bin_edges: Vec<f64> = (0..=bins).map(|k| cfg.a * k as f64 / bins as f64).collect();
        Ok(EmpiricalQsd {
            config: *cfg,
            conditional_density: histogram(&survivors, &bin_edges),
            conditional_density_half: histogram(&survivors_half, &bin_edges),
            bin_edges,
            survival,
            lambda_hat,
            lambda_hat_stderr,
            r_squared,
            survivors,
            survivors_half,
        })
    }

    /// Empirical cdf of the survivors at `T`.
    pub fn empirical_cdf(&self, x: f64) -> f64 {
        let below = self.survivors.partition_point(|&v| v <= x);
        below as f64 / self.survivors.len() as f64
    }
}

/// Runs all paths sequentially.
pub fn simulate(cfg: &SimConfig) -> Result<EmpiricalQsd> {
    cfg.validate()?;
    let outcomes: Vec<PathOutcome> = (0..cfg.paths as u64)
        .map(|i| simulate_path(cfg, i))
        .collect();
    EmpiricalQsd::from_outcomes(cfg, &outcomes)
}

/// `sup |F_n - G|` between the empirical cdf of sorted `samples` and `g`,
/// checked on both sides of every jump.
pub fn sup_distance<G: Fn(f64) -> f64>(samples: &[f64], g: G) -> f64 {
    let n = samples.len() as f64;
    let mut worst: f64 = 0.0;
    for (i, &x) in samples.iter().enumerate() {
        let gx = g(x);
        worst = worst
            .max((gx - i as f64 / n).abs())
            .max((gx - (i + 1) as f64 / n).abs());
    }
    worst
}

/// Outcome of [`compare_to_analytic`].
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    /// `sup_x |F_emp(x) - Q_A(x)|` at the horizon.
    pub sup_distance: f64,
    /// The same at `T/2`.
    pub sup_distance_half: f64,
    /// Empirical minus analytic mean density per bin.
    pub bin_discrepancy: Vec<f64>,
    pub lambda_hat: f64,
    pub lambda: f64,
    /// `(λ̂ - λ) / λ`.
    pub lambda_rel_error: f64,
}

pub fn compare_to_analytic(emp: &EmpiricalQsd, p: &QsdParams) -> Result<Comparison> {
    let (ea, pa) = (emp.config.a, p.a());
    if (ea - pa).abs() > 1e-12 * pa.abs() {
        return Err(QsdError::MismatchedA {
            empirical: ea,
            analytic: pa,
        });
    }
    let cdf = |x: f64| qsd_cdf(p, x);
    let mut bin_discrepancy = Vec::with_capacity(emp.conditional_density.len());
    for (k, d) in emp.conditional_density.iter().enumerate() {
        let (l, r) = (emp.bin_edges[k], emp.bin_edges[k + 1]);
        bin_discrepancy.push(d - (cdf(r) - cdf(l)) / (r - l));
    }
    let lambda = p.lambda();
    Ok(Comparison {
        sup_distance: sup_distance(&emp.survivors, cdf),
        sup_distance_half: sup_distance(&emp.survivors_half, cdf),
        bin_discrepancy,
        lambda_hat: emp.lambda_hat,
        lambda,
        lambda_rel_error: (emp.lambda_hat - lambda) / lambda,
    })
}

/// Sample mean and standard error of `R_t - r0 - t` for the unabsorbed
/// process (no upper boundary).
pub fn martingale_check(r0: f64, t: f64, dt: f64, paths: usize, seed: u64) -> Result<(f64, f64)> {
    if paths < 2 || !(dt > 0.0) || !(t > 0.0) || !(r0 >= 0.0) {
        return Err(QsdError::Config(
            "martingale check needs paths >= 2, dt > 0, t > 0, r0 >= 0",
        ));
    }
    let steps = round(t / dt) as u64;
    let horizon = steps as f64 * dt;
    let sdt = sqrt(dt);
    let (mut sum, mut sum2) = (0.0, 0.0);
    for i in 0..paths as u64 {
        let mut rng = path_rng(seed, i);
        let mut r = r0;
        for _ in 0..steps {
            r += dt + r * increment(&mut rng, 1, sdt);
            if r < 0.0 {
                r = 0.0;
            }
        }
        let d = r - r0 - horizon;
        sum += d;
        sum2 += d * d;
    }
    let n = paths as f64;
    let mean = sum / n;
    let var = (sum2 / n - mean * mean) * n / (n - 1.0);
    Ok((mean, sqrt(var / n)))
}
