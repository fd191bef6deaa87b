//! Exact polynomial algebra for CAD projection: resultants, discriminants,
//! Macaulay resultants, Gröbner elimination, equational-constraint projection
//! and denominator clearing for quantified formulas.

pub mod elim;
pub mod poly;
pub mod project;
pub mod rewrite;

pub use poly::{PolyError, Polynomial, VarOrder};
