//! Command line front end for `shiryaev-qsd`.
//!
//! Exit codes: 0 on success, 2 on a usage error, 1 on a computation error
//! (a JSON record `{"error": code, "message": ...}` goes to stderr).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod output;
pub mod parallel;
mod probe;
pub mod tables;

use std::ffi::OsString;
use std::io;

use clap::Parser;
use serde_json::json;
use shiryaev_qsd::distribution::{qsd_cdf, qsd_pdf};
use shiryaev_qsd::eigen::critical_a;
use shiryaev_qsd::laplace::{laplace_bessel, stationary_laplace, LaplaceMethod};
use shiryaev_qsd::moments::MomentMethod;
use shiryaev_qsd::simulate::{compare_to_analytic, default_horizon, EmpiricalQsd, SimConfig};
use shiryaev_qsd::{QsdError, QsdParams};

use args::{
    Cli, Command, DistArgs, EigenArgs, Figure, LaplaceArgs, LaplaceChoice, MomentArgs,
    MomentChoice, SimArgs,
};
use output::{emit, Cell, Format, OutputSpec, Table};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(QsdError),
    Io(io::Error),
    /// A verification ran to completion and at least one check failed.
    Failed(String),
}

impl From<QsdError> for CliError {
    fn from(e: QsdError) -> Self {
        CliError::Compute(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn record(&self) -> serde_json::Value {
        let (code, message) = match self {
            CliError::Usage(m) => ("cli.usage", m.clone()),
            CliError::Compute(e) => (e.code(), e.to_string()),
            CliError::Io(e) => ("cli.io", e.to_string()),
            CliError::Failed(m) => ("simulate.verify_failed", m.clone()),
        };
        json!({ "error": code, "message": message })
    }
}

type CliResult = Result<(), CliError>;

/// Parses `argv` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.record());
            e.exit_code()
        }
    }
}

fn spec(cli: &Cli, default: Format) -> Result<OutputSpec, CliError> {
    OutputSpec::new(
        cli.out.format.unwrap_or(default),
        cli.out.output.clone(),
        cli.out.precision,
    )
    .map_err(CliError::Usage)
}

fn dispatch(cli: Cli) -> CliResult {
    match &cli.command {
        Command::Eigen(a) => eigen(&cli, a),
        Command::Pdf(a) => distribution(&cli, a, false),
        Command::Cdf(a) => distribution(&cli, a, true),
        Command::Moments(a) => moments(&cli, a),
        Command::Laplace(a) => laplace_cmd(&cli, a),
        Command::Simulate(a) => simulate_cmd(&cli, a, false),
        Command::Verify(a) => simulate_cmd(&cli, a, true),
        Command::Reproduce(a) => {
            let table = match a.figure {
                Figure::Fig1 => tables::fig1_table()?,
                Figure::Fig2 => tables::fig2_table()?,
                Figure::Bounds => tables::bounds_table()?,
                Figure::LaplaceTable => tables::laplace_table()?,
            };
            Ok(emit(&spec(&cli, Format::Csv)?, &table)?)
        }
        Command::SpecfunProbe(a) => {
            let (value, err) = probe::probe(&a.function, &a.args)?;
            let mut t = Table::new(["function", "re", "im", "error_estimate"]);
            t.push(vec![
                a.function.as_str().into(),
                value.re.into(),
                value.im.into(),
                err.into(),
            ]);
            Ok(emit(&spec(&cli, Format::Json)?, &t)?)
        }
    }
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        log::debug!("rejecting {name} = {v}");
        Err(CliError::Compute(QsdError::Domain(
            "level and scale parameters must be positive and finite",
        )))
    }
}

fn eigen(cli: &Cli, a: &EigenArgs) -> CliResult {
    if a.critical {
        let at = critical_a(a.tol)?;
        let mut t = Table::new(["A_critical", "lambda"]);
        let lambda = shiryaev_qsd::principal_lambda(at, a.tol)?.lambda;
        t.push(vec![at.into(), lambda.into()]);
        return Ok(emit(&spec(cli, Format::Json)?, &t)?);
    }
    if let Some(g) = a.grid {
        let levels = if a.log {
            g.log_points().map_err(CliError::Usage)?
        } else {
            g.points()
        };
        for &l in &levels {
            positive("A", l)?;
        }
        return Ok(emit(
            &spec(cli, Format::Csv)?,
            &tables::eigen_table(&levels, a.tol)?,
        )?);
    }
    let level =
        a.a.ok_or_else(|| CliError::Usage("eigen needs --A, --grid or --critical".into()))?;
    let t = tables::eigen_table(&[positive("A", level)?], a.tol)?;
    Ok(emit(&spec(cli, Format::Json)?, &t)?)
}

fn distribution(cli: &Cli, a: &DistArgs, cdf: bool) -> CliResult {
    let level = positive("A", a.a)?;
    let p = QsdParams::for_level(level)?;
    let grid = a.grid.unwrap_or(args::Grid {
        lo: 0.0,
        hi: level,
        n: 101,
    });
    let mut t = Table::new(["x", if cdf { "cdf" } else { "pdf" }]);
    for x in grid.points() {
        let v = if cdf { qsd_cdf(&p, x) } else { qsd_pdf(&p, x) };
        if v.is_nan() {
            // Recompute through the fallible path to surface the error.
            let e = if cdf {
                shiryaev_qsd::distribution::try_qsd_cdf(&p, x)
            } else {
                shiryaev_qsd::distribution::try_qsd_pdf(&p, x)
            };
            e?;
        }
        t.push(vec![x.into(), v.into()]);
    }
    Ok(emit(&spec(cli, Format::Csv)?, &t)?)
}

fn moments(cli: &Cli, a: &MomentArgs) -> CliResult {
    if a.figures {
        let mut t = Table::new(["figure", "A", "n", "moment"]);
        for row in tables::fig1_table()?.rows {
            let level = row[0].clone();
            for (k, n) in [1usize, 2, 3, 4, 5, 10].iter().enumerate() {
                t.push(vec![
                    "fig1".into(),
                    level.clone(),
                    (*n).into(),
                    row[k + 1].clone(),
                ]);
            }
        }
        for row in tables::fig2_table()?.rows {
            for (k, level) in tables::FIG2_LEVELS.iter().enumerate() {
                t.push(vec![
                    "fig2".into(),
                    Cell::Num(*level),
                    row[0].clone(),
                    row[k + 1].clone(),
                ]);
            }
        }
        return Ok(emit(&spec(cli, Format::Csv)?, &t)?);
    }
    let level = positive("A", a.a.expect("clap enforces --A"))?;
    let methods: Vec<MomentMethod> = match a.method {
        MomentChoice::All => MomentMethod::ALL.to_vec(),
        MomentChoice::Recurrence => vec![MomentMethod::Recurrence],
        MomentChoice::TwoFTwo => vec![MomentMethod::ClosedForm2F2],
        MomentChoice::Powerseries => vec![MomentMethod::PowerSeries],
        MomentChoice::Quadrature => vec![MomentMethod::Quadrature],
    };
    let p = QsdParams::for_level(level)?;
    Ok(emit(
        &spec(cli, Format::Csv)?,
        &tables::moments_table(&p, a.n_max, &methods)?,
    )?)
}

fn laplace_cmd(cli: &Cli, a: &LaplaceArgs) -> CliResult {
    let points = a.s.points();
    for &s in &points {
        if !(s >= 0.0 && s.is_finite()) {
            return Err(CliError::Usage(format!("s must be nonnegative, got {s}")));
        }
    }
    if a.limit_check {
        let mut t = Table::new(["s", "A", "bessel", "stationary", "abs_diff"]);
        for &s in &points {
            let h = stationary_laplace(s)?;
            for &level in &a.levels {
                let v = laplace_bessel(&QsdParams::for_level(positive("A", level)?)?, s)?.value;
                t.push(vec![
                    s.into(),
                    level.into(),
                    v.into(),
                    h.into(),
                    (v - h).abs().into(),
                ]);
            }
        }
        return Ok(emit(&spec(cli, Format::Csv)?, &t)?);
    }
    let level = positive("A", a.a.expect("clap enforces --A"))?;
    let methods: Vec<LaplaceMethod> = match a.method {
        LaplaceChoice::All => LaplaceMethod::ALL.to_vec(),
        LaplaceChoice::MomentSeries => vec![LaplaceMethod::MomentSeries],
        LaplaceChoice::Kdf1 => vec![LaplaceMethod::KdF1],
        LaplaceChoice::Kdf2 => vec![LaplaceMethod::KdF2],
        LaplaceChoice::Bessel => vec![LaplaceMethod::BesselForm],
        LaplaceChoice::Quadrature => vec![LaplaceMethod::Quadrature],
    };
    let p = QsdParams::for_level(level)?;
    let mut t = Table::new(tables::laplace_headers(&methods));
    for row in parallel::par_map(&points, |&s| tables::laplace_row(&p, s, &methods)) {
        t.push(row?);
    }
    Ok(emit(&spec(cli, Format::Csv)?, &t)?)
}

pub fn sim_config(a: &SimArgs) -> Result<SimConfig, CliError> {
    let level = positive("A", a.a)?;
    let horizon = match a.horizon {
        Some(h) => h,
        None => default_horizon(level, a.paths.max(1))?,
    };
    let cfg = SimConfig {
        a: level,
        r0: a.r0,
        dt: a.dt,
        horizon,
        paths: a.paths,
        seed: a.seed,
        bins: a.bins,
        substeps: 1,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Thresholds of the `verify` report.
pub const VERIFY_LAMBDA_REL: f64 = 0.05;
pub const VERIFY_SUP_DISTANCE: f64 = 0.02;
pub const VERIFY_R_SQUARED: f64 = 0.99;

fn simulate_cmd(cli: &Cli, a: &SimArgs, verify: bool) -> CliResult {
    let cfg = sim_config(a)?;
    let emp = parallel::simulate_parallel(&cfg)?;
    write_side_tables(a, &emp, cli.out.precision)?;
    let p = QsdParams::for_level(cfg.a)?;
    let cmp = compare_to_analytic(&emp, &p)?;
    if !verify {
        let mut t = Table::new([
            "A",
            "paths",
            "dt",
            "horizon",
            "seed",
            "survivors",
            "lambda_hat",
            "lambda_hat_stderr",
            "r_squared",
            "lambda",
            "sup_distance",
        ]);
        t.push(vec![
            cfg.a.into(),
            cfg.paths.into(),
            cfg.dt.into(),
            cfg.horizon.into(),
            cfg.seed.into(),
            emp.survivors.len().into(),
            emp.lambda_hat.into(),
            emp.lambda_hat_stderr.into(),
            emp.r_squared.into(),
            cmp.lambda.into(),
            cmp.sup_distance.into(),
        ]);
        return Ok(emit(&spec(cli, Format::Json)?, &t)?);
    }
    let checks = [
        (
            "lambda_rel_error",
            cmp.lambda_rel_error.abs(),
            VERIFY_LAMBDA_REL,
            cmp.lambda_rel_error.abs() <= VERIFY_LAMBDA_REL,
        ),
        (
            "sup_distance",
            cmp.sup_distance,
            VERIFY_SUP_DISTANCE,
            cmp.sup_distance <= VERIFY_SUP_DISTANCE,
        ),
        (
            "sup_distance_half",
            cmp.sup_distance_half,
            VERIFY_SUP_DISTANCE,
            cmp.sup_distance_half <= VERIFY_SUP_DISTANCE,
        ),
        (
            "r_squared",
            emp.r_squared,
            VERIFY_R_SQUARED,
            emp.r_squared >= VERIFY_R_SQUARED,
        ),
    ];
    let mut t = Table::new(["check", "value", "threshold", "pass"]);
    for (name, value, threshold, pass) in checks {
        t.push(vec![
            name.into(),
            value.into(),
            threshold.into(),
            pass.into(),
        ]);
    }
    emit(&spec(cli, Format::Csv)?, &t)?;
    let failed: Vec<&str> = checks.iter().filter(|c| !c.3).map(|c| c.0).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "failed checks: {}",
            failed.join(", ")
        )))
    }
}

fn write_side_tables(a: &SimArgs, emp: &EmpiricalQsd, precision: usize) -> CliResult {
    if let Some(path) = &a.histogram {
        let mut t = Table::new(["bin_lo", "bin_hi", "density", "density_half"]);
        for k in 0..emp.conditional_density.len() {
            t.push(vec![
                emp.bin_edges[k].into(),
                emp.bin_edges[k + 1].into(),
                emp.conditional_density[k].into(),
                emp.conditional_density_half[k].into(),
            ]);
        }
        emit(
            &OutputSpec::new(Format::Csv, Some(path.clone()), precision)
                .map_err(CliError::Usage)?,
            &t,
        )?;
    }
    if let Some(path) = &a.survival {
        let mut t = Table::new(["t", "survival"]);
        for &(time, s) in &emp.survival {
            t.push(vec![time.into(), s.into()]);
        }
        emit(
            &OutputSpec::new(Format::Csv, Some(path.clone()), precision)
                .map_err(CliError::Usage)?,
            &t,
        )?;
    }
    Ok(())
}
