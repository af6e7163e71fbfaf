//! Quasi-stationary distribution of the Shiryaev diffusion `dR = dt + R dB`
//! on `[0, A]` with absorption at `A`.
//!
//! The crate computes the principal eigenvalue `λ_A`, the quasi-stationary
//! pdf/cdf, the full moment series and the Laplace transform, each through
//! several independent routes so that they can be checked against one
//! another. A Monte Carlo kernel for the absorbed diffusion is included as an
//! end-to-end oracle.
//!
//! The crate is `no_std` (it needs `alloc`); IO and the command line live in
//! the companion `shiryaev-qsd-cli` crate.

#![no_std]
#![warn(missing_debug_implementations)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(test, allow(clippy::excessive_precision))]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod complex;
pub mod distribution;
pub mod eigen;
mod error;
pub mod laplace;
pub(crate) mod math;
pub mod moments;
pub mod numerics;
pub mod series;
pub mod simulate;
pub mod specfun;

pub use complex::{collapse_real, ComplexValue, OrderKind, OrderParam};
pub use distribution::{qsd_cdf, qsd_pdf, stationary_cdf, stationary_pdf, QsdParams};
pub use eigen::{critical_a, lambda_bounds, principal_lambda, xi_of_lambda, EigenSolution};
pub use error::{QsdError, Result};
pub use laplace::{LaplaceEval, LaplaceMethod};
pub use moments::{MomentMethod, MomentSeries};
pub use series::SeriesControl;
