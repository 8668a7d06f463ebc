//! Exact arithmetic: `Q[q]`, `Q(q)`, `Q(q)[x]`, `Q[q, x]`, polynomial matrices,
//! Gröbner bases and resultants.

pub mod bipoly;
pub mod groebner;
pub mod linsolve;
pub mod matrix;
pub mod polyq;
pub mod polyx;
pub mod ratfunc;
pub mod resultant;

pub use bipoly::{BiPoly, Mono};
pub use groebner::GroebnerBasis;
pub use matrix::PolyMatrix;
pub use polyq::PolyQ;
pub use polyx::{PolyX, RatFuncX};
pub use ratfunc::RatFuncQ;
