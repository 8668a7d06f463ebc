//! Desingularization of linear q-difference operators.

pub mod arith;
pub mod error;

pub use error::{Error, Result};
pub mod bimonic;
pub mod desing;
pub mod dispersion;
pub mod fixtures;
pub mod qweyl;
pub mod text;

pub use qweyl::{QWeylOp, RatOp};
