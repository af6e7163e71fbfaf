//! Generalized hypergeometric `₂F₂` by direct power series.

use num_complex::Complex64;

use crate::complex::is_nonpositive_integer;
use crate::error::{QsdError, Result};
use crate::series::{SeriesControl, SeriesValue, QUIET_TERMS};

const EPS: f64 = f64::EPSILON;

/// `₂F₂[a1, a2; b1, b2; z]`.
///
/// When a numerator parameter is `-n` the series is summed over exactly
/// `n + 1` terms. Otherwise summation stops once `QUIET_TERMS` consecutive
/// terms fall below `ctl.rel_tol * |sum|` past the point where the term
/// ratio has started to shrink.
pub fn hyp2f2(
    a1: Complex64,
    a2: Complex64,
    b1: Complex64,
    b2: Complex64,
    z: Complex64,
    ctl: &SeriesControl,
) -> Result<SeriesValue<Complex64>> {
    for b in [b1, b2] {
        if is_nonpositive_integer(b) {
            return Err(QsdError::DenominatorPole { value: b.re });
        }
    }
    let terminating = [a1, a2]
        .iter()
        .filter(|a| is_nonpositive_integer(**a))
        .map(|a| (-a.re) as usize)
        .min();

    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut magnitude = 1.0;

    if let Some(n) = terminating {
        for k in 0..n {
            let kf = k as f64;
            term *= (a1 + kf) * (a2 + kf) * z / ((b1 + kf) * (b2 + kf) * (kf + 1.0));
            sum += term;
            magnitude += term.norm();
        }
        return Ok(SeriesValue {
            value: sum,
            abs_err: EPS * magnitude,
            terms: n + 1,
        });
    }

    let mut quiet = 0;
    for k in 0..ctl.max_terms {
        let kf = k as f64;
        let ratio = (a1 + kf) * (a2 + kf) * z / ((b1 + kf) * (b2 + kf) * (kf + 1.0));
        term *= ratio;
        sum += term;
        magnitude += term.norm();
        let shrinking = ratio.norm() < 0.5;
        if shrinking && term.norm() <= ctl.rel_tol * sum.norm() {
            quiet += 1;
            if quiet >= QUIET_TERMS {
                // Geometric tail bound with ratio below 1/2.
                let tail = 2.0 * term.norm();
                return Ok(SeriesValue {
                    value: sum,
                    abs_err: tail + EPS * magnitude,
                    terms: k + 2,
                });
            }
        } else {
            quiet = 0;
        }
        if !sum.re.is_finite() || !sum.im.is_finite() {
            break;
        }
    }
    Err(QsdError::NonConvergence {
        what: "2F2 power series",
        terms: ctl.max_terms,
    })
}
