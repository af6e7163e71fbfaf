//! Complex values and the branch-tagged order parameter.

use log::warn;
use num_complex::Complex64;

use crate::error::{QsdError, Result};

pub type ComplexValue = Complex64;

/// Imaginary residues below this (relative to `1 + |re|`) are rounding noise.
pub const ATOL_IMAG: f64 = 1e-10;
/// Residues beyond this mean a formula that must be real is not.
pub const HARD_IMAG_LIMIT: f64 = 1e-6;

/// Collapse a value that is known to be real.
///
/// Residues between [`ATOL_IMAG`] and [`HARD_IMAG_LIMIT`] are logged and
/// dropped; anything larger is an error.
pub fn collapse_real(z: Complex64) -> Result<f64> {
    let scale = 1.0 + z.re.abs();
    let residue = z.im.abs();
    if residue <= ATOL_IMAG * scale {
        Ok(z.re)
    } else if residue <= HARD_IMAG_LIMIT * scale {
        warn!(
            "imaginary residue {residue:e} on real-valued result {}",
            z.re
        );
        Ok(z.re)
    } else {
        Err(QsdError::ImaginaryResidue {
            real: z.re,
            imag: z.im,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Real,
    Imaginary,
}

/// A value lying on either the real or the imaginary axis.
///
/// `value` is the signed coordinate along that axis, so negation is exact
/// and `magnitude()` is `|value|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderParam {
    pub kind: OrderKind,
    pub value: f64,
}

impl OrderParam {
    pub const ZERO: OrderParam = OrderParam {
        kind: OrderKind::Real,
        value: 0.0,
    };

    pub fn real(value: f64) -> Self {
        OrderParam {
            kind: OrderKind::Real,
            value,
        }
    }

    pub fn imaginary(value: f64) -> Self {
        OrderParam {
            kind: OrderKind::Imaginary,
            value,
        }
    }

    pub fn magnitude(&self) -> f64 {
        self.value.abs()
    }

    pub fn as_complex(&self) -> Complex64 {
        match self.kind {
            OrderKind::Real => Complex64::new(self.value, 0.0),
            OrderKind::Imaginary => Complex64::new(0.0, self.value),
        }
    }

    /// The square, which is always real.
    pub fn squared(&self) -> f64 {
        match self.kind {
            OrderKind::Real => self.value * self.value,
            OrderKind::Imaginary => -self.value * self.value,
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        OrderParam {
            kind: self.kind,
            value: self.value * factor,
        }
    }

    pub fn negated(&self) -> Self {
        self.scale(-1.0)
    }

    pub fn half(&self) -> Self {
        self.scale(0.5)
    }
}

impl From<f64> for OrderParam {
    fn from(value: f64) -> Self {
        OrderParam::real(value)
    }
}

impl From<OrderParam> for Complex64 {
    fn from(b: OrderParam) -> Self {
        b.as_complex()
    }
}

/// Exact test for `z ∈ {0, -1, -2, ...}`.
pub(crate) fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == crate::math::floor(z.re)
}
