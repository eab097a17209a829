//! Exact scalar arithmetic and canonical row reduction over prime fields and
//! the rationals.

pub mod backend;
pub mod echelon;
pub mod matrix;
pub mod scalar;

pub use backend::{Backend, Gf2, Gfp, Rat};
pub use echelon::Echelon;
pub use matrix::{member, rref, RowLayout, RowMatrix, RrefResult};
pub use scalar::{is_prime, CoefficientRing, Scalar};
