//! Truncation policy shared by every power and double series.

use crate::error::{QsdError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            rel_tol: 1e-14,
            max_terms: 20_000,
        }
    }
}

impl SeriesControl {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0) {
            return Err(QsdError::Domain("series rel_tol must be positive"));
        }
        if max_terms == 0 {
            return Err(QsdError::Domain("series max_terms must be at least 1"));
        }
        Ok(SeriesControl { rel_tol, max_terms })
    }
}

/// Consecutive negligible terms required before a series is cut.
pub(crate) const QUIET_TERMS: usize = 3;

/// A summed series with its error estimate.
///
/// `abs_err` combines the truncation tail bound with the rounding error
/// implied by the largest partial magnitudes (`eps * sum |term|`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue<T> {
    pub value: T,
    pub abs_err: f64,
    pub terms: usize,
}
