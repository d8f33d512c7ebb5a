//! Exact computations around Weyl groups, their Hecke algebras and Weyl
//! modules, together with an audit engine that checks the conjectured
//! cell-wise description of the reduction mod `p` of unipotent
//! representations for types A1, A2, A3, A4, B2 and G2.

pub mod audit;
pub mod cli;
pub mod coxeter;
pub mod error;
pub mod heckechar;
pub mod klcells;
pub mod poly;
pub mod rootdata;
pub mod sl3lab;
pub mod uniptables;
pub mod weylmod;

pub use error::{Error, Result};
