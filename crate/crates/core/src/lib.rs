//! Relation spaces of relatively free nilpotent algebras over finite and
//! infinite fields: exact linear algebra, words and free polynomials,
//! linearizations of `x^n`, truncated relation-space closure, and a checker
//! for polynomial identities.

pub mod error;
pub mod exactla;
pub mod identities;
pub mod linearize;
pub mod relspace;
pub mod words;

pub use error::{Error, Result};
