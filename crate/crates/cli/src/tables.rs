//! Tables shared by several subcommands and by the reproduction targets.

use shiryaev_qsd::eigen::{lambda_bounds, principal_lambda, DEFAULT_TOL};
use shiryaev_qsd::laplace::{default_step, laplace, ode_residual, LaplaceMethod};
use shiryaev_qsd::moments::{moments_recurrence, MomentMethod, MomentSeries};
use shiryaev_qsd::{QsdError, QsdParams, Result};

use crate::output::{Cell, Table};
use crate::parallel::par_map;

/// Largest pairwise relative difference among the finite values.
pub fn max_rel_spread(values: &[f64]) -> Option<f64> {
    let v: Vec<f64> = values.iter().copied().filter(|x| x.is_finite()).collect();
    if v.len() < 2 {
        return None;
    }
    let mut worst: f64 = 0.0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let scale = v[i].abs().max(v[j].abs());
            if scale > 0.0 {
                worst = worst.max((v[i] - v[j]).abs() / scale);
            }
        }
    }
    Some(worst)
}

pub fn eigen_row_headers() -> [&'static str; 7] {
    [
        "A",
        "lambda",
        "xi_kind",
        "xi",
        "residual",
        "lower_bound",
        "upper_bound",
    ]
}

pub fn eigen_table(levels: &[f64], tol: f64) -> Result<Table> {
    let mut t = Table::new(eigen_row_headers());
    for row in par_map(levels, |&a| -> Result<Vec<Cell>> {
        let s = principal_lambda(a, tol)?;
        let (lo, hi) = lambda_bounds(a)?;
        Ok(vec![
            a.into(),
            s.lambda.into(),
            kind_name(&s.xi).into(),
            s.xi.value.into(),
            s.residual.into(),
            lo.into(),
            hi.into(),
        ])
    }) {
        t.push(row?);
    }
    Ok(t)
}

pub fn kind_name(o: &shiryaev_qsd::OrderParam) -> &'static str {
    match o.kind {
        shiryaev_qsd::OrderKind::Real => "real",
        shiryaev_qsd::OrderKind::Imaginary => "imaginary",
    }
}

/// Moments of one level by the requested methods, with the spread column.
pub fn moments_table(p: &QsdParams, n_max: usize, methods: &[MomentMethod]) -> Result<Table> {
    let mut headers = vec!["n".to_string()];
    headers.extend(methods.iter().map(|m| m.name().to_string()));
    headers.push("max_rel_spread".into());
    let series: Vec<MomentSeries> = methods
        .iter()
        .map(|&m| MomentSeries::compute(p, n_max, m))
        .collect::<Result<_>>()?;
    let mut t = Table::new(headers);
    for n in 0..=n_max {
        let values: Vec<f64> = series.iter().map(|s| s.values[n]).collect();
        let mut row: Vec<Cell> = vec![n.into()];
        row.extend(values.iter().map(|&v| Cell::Num(v)));
        row.push(max_rel_spread(&values).into());
        t.push(row);
    }
    Ok(t)
}

fn tolerate(r: Result<f64>) -> Result<Option<f64>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(QsdError::NonConvergence { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// One Laplace row: every requested route, their spread and the ODE
/// residual of the Bessel form.
pub fn laplace_row(p: &QsdParams, s: f64, methods: &[LaplaceMethod]) -> Result<Vec<Cell>> {
    let mut values = Vec::new();
    for &m in methods {
        values.push(tolerate(laplace(p, s, m).map(|e| e.value))?);
    }
    let present: Vec<f64> = values.iter().flatten().copied().collect();
    let residual = if s > 0.0 {
        tolerate(ode_residual(
            p,
            s,
            default_step(s),
            LaplaceMethod::BesselForm,
        ))?
    } else {
        None
    };
    let mut row: Vec<Cell> = vec![s.into(), p.a().into()];
    row.extend(values.into_iter().map(Cell::from));
    row.push(max_rel_spread(&present).into());
    row.push(present.len().into());
    row.push(residual.into());
    Ok(row)
}

pub fn laplace_headers(methods: &[LaplaceMethod]) -> Vec<String> {
    let mut h = vec!["s".to_string(), "A".to_string()];
    h.extend(methods.iter().map(|m| m.name().to_string()));
    h.extend(["max_rel_spread", "converged_routes", "ode_residual"].map(String::from));
    h
}

/// Figure 1: `𝔐_n(A)` for `n ∈ {1,2,3,4,5,10}`, `A = 0.05, 0.10, …, 50`.
pub fn fig1_table() -> Result<Table> {
    const NS: [usize; 6] = [1, 2, 3, 4, 5, 10];
    let levels: Vec<f64> = (1..=1000).map(|k| 0.05 * k as f64).collect();
    let mut headers = vec!["A".to_string()];
    headers.extend(NS.iter().map(|n| format!("M{n}")));
    let mut t = Table::new(headers);
    for row in par_map(&levels, |&a| -> Result<Vec<Cell>> {
        let p = QsdParams::for_level(a)?;
        let m = moments_recurrence(&p, 10);
        let mut row: Vec<Cell> = vec![a.into()];
        row.extend(NS.iter().map(|&n| Cell::Num(m.values[n])));
        Ok(row)
    }) {
        t.push(row?);
    }
    Ok(t)
}

pub const FIG2_LEVELS: [f64; 6] = [1.0, 3.0, 5.0, 10.0, 30.0, 50.0];

/// Figure 2: `𝔐_n` for `n = 1..10` at `A ∈ {1, 3, 5, 10, 30, 50}`.
pub fn fig2_table() -> Result<Table> {
    let mut headers = vec!["n".to_string()];
    headers.extend(FIG2_LEVELS.iter().map(|a| format!("A={a}")));
    let columns: Vec<Vec<f64>> = par_map(&FIG2_LEVELS, |&a| -> Result<Vec<f64>> {
        Ok(moments_recurrence(&QsdParams::for_level(a)?, 10).values)
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let mut t = Table::new(headers);
    for n in 1..=10usize {
        let mut row: Vec<Cell> = vec![n.into()];
        row.extend(columns.iter().map(|c| Cell::Num(c[n])));
        t.push(row);
    }
    Ok(t)
}

/// 25 log-spaced levels in `[0.5, 200]`.
pub fn bounds_levels() -> Vec<f64> {
    let (l, h) = (0.5f64.ln(), 200f64.ln());
    (0..25)
        .map(|k| (l + (h - l) * k as f64 / 24.0).exp())
        .collect()
}

pub fn bounds_table() -> Result<Table> {
    let mut t = Table::new([
        "A",
        "lower_bound",
        "lambda",
        "upper_bound",
        "A_lambda",
        "inside",
    ]);
    for row in par_map(&bounds_levels(), |&a| -> Result<Vec<Cell>> {
        let s = principal_lambda(a, DEFAULT_TOL)?;
        let (lo, hi) = lambda_bounds(a)?;
        Ok(vec![
            a.into(),
            lo.into(),
            s.lambda.into(),
            hi.into(),
            (a * s.lambda).into(),
            (lo < s.lambda && s.lambda < hi).into(),
        ])
    }) {
        t.push(row?);
    }
    Ok(t)
}

pub const LAPLACE_TABLE_S: [f64; 3] = [0.1, 1.0, 5.0];
pub const LAPLACE_TABLE_A: [f64; 3] = [1.0, 5.0, 20.0];

pub fn laplace_table() -> Result<Table> {
    let methods = LaplaceMethod::ALL;
    let mut t = Table::new(laplace_headers(&methods));
    let cases: Vec<(f64, f64)> = LAPLACE_TABLE_A
        .iter()
        .flat_map(|&a| LAPLACE_TABLE_S.iter().map(move |&s| (a, s)))
        .collect();
    for row in par_map(&cases, |&(a, s)| {
        laplace_row(&QsdParams::for_level(a)?, s, &methods)
    }) {
        t.push(row?);
    }
    Ok(t)
}
