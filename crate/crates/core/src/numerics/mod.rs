//! Root finding and quadrature shared by the other modules.

mod quad;
mod root;

pub use quad::{integrate, integrate_complex, integrate_with, QuadOptions, QuadResult, QuadValue};
pub use root::{find_root, Bracket};
