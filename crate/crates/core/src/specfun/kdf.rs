//! The Kampé de Fériet function
//! `F^{0:2;1}_{2:0;0}` with terms
//! `(a1)_i (a2)_i (1)_j / ((b1)_{i+j} (b2)_{i+j}) · u^i v^j / (i! j!)`.

use num_complex::Complex64;

use crate::complex::is_nonpositive_integer;
use crate::error::{QsdError, Result};
use crate::series::{SeriesControl, SeriesValue, QUIET_TERMS};

const EPS: f64 = f64::EPSILON;

/// Sum of `Σ_j v^j / ((c1)_j (c2)_j)` scaled by `lead`; returns (sum, Σ|term|, tail).
fn inner_row(
    lead: Complex64,
    c1: Complex64,
    c2: Complex64,
    v: f64,
    ctl: &SeriesControl,
) -> Result<(Complex64, f64, f64, usize)> {
    let mut term = lead;
    let mut sum = term;
    let mut magnitude = term.norm();
    if lead.norm() == 0.0 || v == 0.0 {
        return Ok((sum, magnitude, 0.0, 1));
    }
    let mut quiet = 0;
    for j in 0..ctl.max_terms {
        let jf = j as f64;
        let ratio = v / ((c1 + jf) * (c2 + jf));
        term *= ratio;
        sum += term;
        magnitude += term.norm();
        if ratio.norm() < 0.5 && term.norm() <= ctl.rel_tol * sum.norm().max(f64::MIN_POSITIVE) {
            quiet += 1;
            if quiet >= QUIET_TERMS {
                return Ok((sum, magnitude, 2.0 * term.norm(), j + 2));
            }
        } else {
            quiet = 0;
        }
    }
    Err(QsdError::NonConvergence {
        what: "Kampe de Feriet inner series",
        terms: ctl.max_terms,
    })
}

/// Evaluates the double series row by row in `i`.
///
/// A row is negligible when its total is below `ctl.rel_tol` of the running
/// sum while the row-to-row ratio is shrinking; `QUIET_TERMS` negligible rows
/// end the summation. The error estimate includes `eps · Σ|term|`, so heavy
/// cancellation shows up in `abs_err`.
pub fn kampe_de_feriet(
    a1: Complex64,
    a2: Complex64,
    b1: Complex64,
    b2: Complex64,
    u: f64,
    v: f64,
    ctl: &SeriesControl,
) -> Result<SeriesValue<Complex64>> {
    for b in [b1, b2] {
        if is_nonpositive_integer(b) {
            return Err(QsdError::DenominatorPole { value: b.re });
        }
    }
    if !(u.is_finite() && v.is_finite()) {
        return Err(QsdError::Domain("Kampe de Feriet arguments must be finite"));
    }
    let mut lead = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    let mut tails = 0.0;
    let mut terms = 0;
    let mut quiet = 0;
    for i in 0..ctl.max_terms {
        let fi = i as f64;
        let (row, row_mag, tail, used) = inner_row(lead, b1 + fi, b2 + fi, v, ctl)?;
        sum += row;
        magnitude += row_mag;
        tails += tail;
        terms += used;
        if !(sum.re.is_finite() && sum.im.is_finite()) {
            break;
        }
        let ratio = (a1 + fi) * (a2 + fi) * u / ((b1 + fi) * (b2 + fi) * (fi + 1.0));
        if lead.norm() == 0.0 {
            // A numerator parameter hit a nonpositive integer: the sum is finite.
            return Ok(SeriesValue {
                value: sum,
                abs_err: tails + EPS * magnitude,
                terms,
            });
        }
        if ratio.norm() < 0.5 && row.norm() <= ctl.rel_tol * sum.norm() {
            quiet += 1;
            if quiet >= QUIET_TERMS {
                return Ok(SeriesValue {
                    value: sum,
                    abs_err: 2.0 * row.norm() + tails + EPS * magnitude,
                    terms,
                });
            }
        } else {
            quiet = 0;
        }
        lead *= ratio;
        if lead.norm() == 0.0 {
            return Ok(SeriesValue {
                value: sum,
                abs_err: tails + EPS * magnitude,
                terms,
            });
        }
    }
    Err(QsdError::NonConvergence {
        what: "Kampe de Feriet double series",
        terms: ctl.max_terms,
    })
}
