use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

/// Quasi-stationary distribution of the Shiryaev diffusion absorbed at A.
#[derive(Debug, Parser)]
#[command(name = "qsd", version, arg_required_else_help = true)]
pub struct Cli {
    #[command(flatten)]
    pub out: OutArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Output format (each command has its own default).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Significant digits for numbers, 1 to 17.
    #[arg(long, global = true, default_value_t = 12, value_parser = parse_count::<usize>)]
    pub precision: usize,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

/// Parses a nonnegative integer, also written in scientific notation (`2e5`).
pub fn parse_count<T: TryFrom<u64>>(s: &str) -> Result<T, String> {
    let v = match s.parse::<u64>() {
        Ok(v) => v,
        Err(_) => {
            let x: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
            if !(x >= 0.0 && x.fract() == 0.0 && x < 1.8e19) {
                return Err(format!("{s:?} is not a nonnegative integer"));
            }
            x as u64
        }
    };
    T::try_from(v).map_err(|_| format!("{s:?} is out of range"))
}

/// `lo:hi:n`, `n` equally spaced points including both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl FromStr for Grid {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected lo:hi:n, got {s:?}"));
        }
        let lo: f64 = parts[0]
            .trim()
            .parse()
            .map_err(|e| format!("bad lo: {e}"))?;
        let hi: f64 = parts[1]
            .trim()
            .parse()
            .map_err(|e| format!("bad hi: {e}"))?;
        let n: usize = parse_count(parts[2].trim()).map_err(|e| format!("bad n: {e}"))?;
        if n == 0 || !lo.is_finite() || !hi.is_finite() || (n > 1 && hi < lo) {
            return Err(format!("invalid grid {s:?}"));
        }
        Ok(Grid { lo, hi, n })
    }
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        (0..self.n)
            .map(|k| self.lo + (self.hi - self.lo) * k as f64 / (self.n - 1) as f64)
            .collect()
    }

    pub fn log_points(&self) -> Result<Vec<f64>, String> {
        if !(self.lo > 0.0) {
            return Err("log grid needs lo > 0".into());
        }
        if self.n == 1 {
            return Ok(vec![self.lo]);
        }
        let (l, h) = (self.lo.ln(), self.hi.ln());
        Ok((0..self.n)
            .map(|k| (l + (h - l) * k as f64 / (self.n - 1) as f64).exp())
            .collect())
    }
}

/// A single value or a `lo:hi:n` grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ValueOrGrid {
    Value(f64),
    Grid(Grid),
}

impl FromStr for ValueOrGrid {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s.contains(':') {
            Ok(ValueOrGrid::Grid(s.parse()?))
        } else {
            s.trim()
                .parse()
                .map(ValueOrGrid::Value)
                .map_err(|e| format!("bad number {s:?}: {e}"))
        }
    }
}

impl ValueOrGrid {
    pub fn points(&self) -> Vec<f64> {
        match self {
            ValueOrGrid::Value(v) => vec![*v],
            ValueOrGrid::Grid(g) => g.points(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MomentChoice {
    All,
    Recurrence,
    #[value(name = "2f2")]
    TwoFTwo,
    Powerseries,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LaplaceChoice {
    All,
    MomentSeries,
    Kdf1,
    Kdf2,
    Bessel,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Fig1,
    Fig2,
    Bounds,
    LaplaceTable,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Principal eigenvalue λ_A, a grid of them, or the critical level Ã.
    Eigen(EigenArgs),
    /// Quasi-stationary density on a grid.
    Pdf(DistArgs),
    /// Quasi-stationary cdf on a grid.
    Cdf(DistArgs),
    /// Moments by recurrence, 2F2, power series and quadrature.
    Moments(MomentArgs),
    /// Laplace transform by every route, with ODE residual.
    Laplace(LaplaceArgs),
    /// Monte Carlo run: survival decay rate and conditional histogram.
    Simulate(SimArgs),
    /// Monte Carlo run compared against the analytic law, with pass/fail.
    Verify(SimArgs),
    /// Data grids for the published figures and tables.
    Reproduce(ReproduceArgs),
    /// Raw special-function evaluation.
    #[command(hide = true)]
    SpecfunProbe(ProbeArgs),
}

#[derive(Debug, Args)]
pub struct EigenArgs {
    #[arg(long = "A", short = 'A', allow_negative_numbers = true, conflicts_with_all = ["grid", "critical"])]
    pub a: Option<f64>,
    /// Grid of levels, lo:hi:n.
    #[arg(long)]
    pub grid: Option<Grid>,
    /// Space the grid logarithmically.
    #[arg(long, requires = "grid")]
    pub log: bool,
    /// Solve for the critical level Ã where λ = 1/8.
    #[arg(long)]
    pub critical: bool,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[arg(long = "A", short = 'A', allow_negative_numbers = true)]
    pub a: f64,
    /// Points lo:hi:n (default 0:A:101).
    #[arg(long)]
    pub grid: Option<Grid>,
}

#[derive(Debug, Args)]
pub struct MomentArgs {
    #[arg(
        long = "A",
        short = 'A',
        allow_negative_numbers = true,
        required_unless_present = "figures"
    )]
    pub a: Option<f64>,
    #[arg(long, default_value_t = 10, value_parser = parse_count::<usize>)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value_t = MomentChoice::All)]
    pub method: MomentChoice,
    /// Emit the Figure 1 and Figure 2 grids instead.
    #[arg(long)]
    pub figures: bool,
}

#[derive(Debug, Args)]
pub struct LaplaceArgs {
    #[arg(
        long = "A",
        short = 'A',
        allow_negative_numbers = true,
        required_unless_present = "limit_check"
    )]
    pub a: Option<f64>,
    /// A value or a grid lo:hi:n.
    #[arg(long)]
    pub s: ValueOrGrid,
    #[arg(long, value_enum, default_value_t = LaplaceChoice::All)]
    pub method: LaplaceChoice,
    /// Compare the Bessel form across increasing A with the stationary transform.
    #[arg(long)]
    pub limit_check: bool,
    /// Levels for --limit-check.
    #[arg(long, value_delimiter = ',', default_values_t = [20.0, 50.0, 200.0, 500.0])]
    pub levels: Vec<f64>,
}

#[derive(Debug, Args, Clone)]
pub struct SimArgs {
    #[arg(long = "A", short = 'A', allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, default_value_t = 200_000, value_parser = parse_count::<usize>)]
    pub paths: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub dt: f64,
    /// Time horizon (default: about 5000 expected survivors).
    #[arg(long)]
    pub horizon: Option<f64>,
    #[arg(long, default_value_t = 42, value_parser = parse_count::<u64>)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.0)]
    pub r0: f64,
    #[arg(long, default_value_t = 64, value_parser = parse_count::<usize>)]
    pub bins: usize,
    /// Also write the histogram (CSV) here.
    #[arg(long)]
    pub histogram: Option<std::path::PathBuf>,
    /// Also write the survival curve (CSV) here.
    #[arg(long)]
    pub survival: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(value_enum)]
    pub figure: Figure,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    /// gamma, pochhammer, hyp2f2, whittaker_m, whittaker_w, bessel_i, bessel_k, kdf, weber_i, weber_k
    pub function: String,
    /// Numbers; orders may carry an `i` suffix for imaginary values.
    #[arg(allow_negative_numbers = true)]
    pub args: Vec<String>,
}
