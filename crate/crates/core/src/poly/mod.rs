//! Exact univariate polynomials: Laurent polynomials in `v` and rational
//! polynomials in `t`.

mod intpoly;
mod laurent;
mod parse;
mod render;

pub use intpoly::IntPoly;
pub use laurent::LaurentPoly;
