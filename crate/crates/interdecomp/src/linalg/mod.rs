//! Exact rational linear algebra: scalars, dense matrices, and subspaces.
//!
//! Everything downstream — projector checks, decompositions, couplings —
//! reduces to row reduction over ℚ, so this module is deliberately small and
//! completely exact: no floating point appears anywhere in the crate.

mod matrix;
mod rat;
mod subspace;

pub use matrix::Matrix;
pub use rat::{format_rat, is_negative, parse_rat, rat, rat_int, Rat, RatParseError};
pub use subspace::Subspace;
