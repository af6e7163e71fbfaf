//! Direct evaluation of a single special function, for debugging and tests.

use num_complex::Complex64;
use shiryaev_qsd::specfun::{
    bessel_i, bessel_k, gamma, hyp2f2, kampe_de_feriet, pochhammer, weber_incomplete, whittaker_m,
    whittaker_w, BesselKind,
};
use shiryaev_qsd::{OrderParam, SeriesControl};

use crate::CliError;

/// Parses `x` as a real number or `xi` as a purely imaginary one.
fn parse_value(s: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Usage(format!("cannot parse '{s}' as a number"));
    match s.strip_suffix('i') {
        Some(im) => Ok(Complex64::new(0.0, im.parse().map_err(|_| bad())?)),
        None => Ok(Complex64::new(s.parse().map_err(|_| bad())?, 0.0)),
    }
}

fn parse_order(s: &str) -> Result<OrderParam, CliError> {
    let v = parse_value(s)?;
    Ok(if v.im != 0.0 {
        OrderParam::imaginary(v.im)
    } else {
        OrderParam::real(v.re)
    })
}

fn parse_real(s: &str) -> Result<f64, CliError> {
    let v = parse_value(s)?;
    if v.im != 0.0 {
        return Err(CliError::Usage(format!("'{s}' must be real")));
    }
    Ok(v.re)
}

fn arity(function: &str, args: &[String], n: usize) -> Result<(), CliError> {
    if args.len() == n {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "{function} takes {n} arguments, got {}",
            args.len()
        )))
    }
}

/// Evaluates `function` at `args`, returning the value and an error estimate.
pub fn probe(function: &str, args: &[String]) -> Result<(Complex64, f64), CliError> {
    let eps = f64::EPSILON;
    let real = |v: f64| (Complex64::new(v, 0.0), eps * v.abs());
    let out = match function {
        "gamma" => {
            arity(function, args, 1)?;
            let v = gamma(parse_value(&args[0])?)?;
            (v, eps * v.norm())
        }
        "pochhammer" => {
            arity(function, args, 2)?;
            let n: usize = args[1]
                .parse()
                .map_err(|_| CliError::Usage("n must be a nonnegative integer".into()))?;
            let v = pochhammer(parse_value(&args[0])?, n);
            (v, eps * v.norm())
        }
        "hyp2f2" => {
            arity(function, args, 5)?;
            let p = args
                .iter()
                .map(|a| parse_value(a))
                .collect::<Result<Vec<_>, _>>()?;
            let r = hyp2f2(p[0], p[1], p[2], p[3], p[4], &SeriesControl::default())?;
            (r.value, r.abs_err)
        }
        "kdf" => {
            arity(function, args, 6)?;
            let p = args[..4]
                .iter()
                .map(|a| parse_value(a))
                .collect::<Result<Vec<_>, _>>()?;
            let u = parse_real(&args[4])?;
            let v = parse_real(&args[5])?;
            let r = kampe_de_feriet(p[0], p[1], p[2], p[3], u, v, &SeriesControl::default())?;
            (r.value, r.abs_err)
        }
        "whittaker_m" => {
            arity(function, args, 3)?;
            let v = whittaker_m(
                parse_real(&args[0])?,
                parse_order(&args[1])?.as_complex(),
                parse_real(&args[2])?,
            )?;
            (v, 1e-13 * v.norm())
        }
        "whittaker_w" => {
            arity(function, args, 3)?;
            let v = whittaker_w(
                parse_real(&args[0])?,
                parse_order(&args[1])?,
                parse_real(&args[2])?,
            )?;
            (Complex64::new(v, 0.0), 1e-13 * v.abs())
        }
        "bessel_i" => {
            arity(function, args, 2)?;
            let v = bessel_i(parse_order(&args[0])?, parse_real(&args[1])?)?;
            (v, 1e-14 * v.norm())
        }
        "bessel_k" => {
            arity(function, args, 2)?;
            real(bessel_k(parse_order(&args[0])?, parse_real(&args[1])?)?)
        }
        "weber_i" | "weber_k" => {
            arity(function, args, 3)?;
            let kind = if function == "weber_i" {
                BesselKind::I
            } else {
                BesselKind::K
            };
            let r = weber_incomplete(
                kind,
                parse_real(&args[0])?,
                parse_real(&args[1])?,
                parse_order(&args[2])?,
            )?;
            (r.value, r.abs_err_estimate)
        }
        other => return Err(CliError::Usage(format!("unknown function '{other}'"))),
    };
    Ok(out)
}
