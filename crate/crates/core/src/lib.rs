//! Exact arithmetic for rank-2 Drinfeld modules over F_q[T]: Legendre-family
//! period coefficients, supersingularity polynomials, and the oracles that
//! cross-check them.

pub mod algebra;
pub mod drinfeld;
pub mod error;
pub mod legendre;
pub mod skew;
pub mod supersingular;
pub mod verify;

pub use error::{Error, Result};
