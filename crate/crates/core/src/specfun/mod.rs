//! Special functions: Gamma, Pochhammer, ₂F₂, Whittaker, modified Bessel,
//! Kampé de Fériet and incomplete Weber integrals.

mod bessel;
mod gamma;
mod hyp2f2;
mod kdf;
mod pochhammer;
mod weber;
mod whittaker;

pub use bessel::{bessel_i, bessel_i_complex, bessel_k, bessel_k_complex, bessel_k_scaled};
pub use gamma::{gamma, gamma_real, rgamma, rgamma_real};
pub use hyp2f2::hyp2f2;
pub use kdf::kampe_de_feriet;
pub use pochhammer::{pochhammer, pochhammer_real};
pub use weber::{weber_incomplete, weber_incomplete_with, BesselKind};
pub use whittaker::{
    w_route, whittaker_m, whittaker_m_with_derivative, whittaker_w, whittaker_w_via,
    whittaker_w_with_derivative, ValueDerivative, WRoute, INTEGER_ORDER_WINDOW, Z_CONNECTION_MAX,
};
