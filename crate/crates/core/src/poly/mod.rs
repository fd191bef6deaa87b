//! Exact sparse multivariate polynomials over the integers.

mod order;
mod parse;
mod polynomial;

pub mod dense;
pub mod factor;
pub mod gcd;
pub mod interp;
pub mod modp;
pub mod ring;
pub mod roots;
pub mod sqfree;

pub use factor::{factor_univariate, Factorization};
pub use gcd::{content_primitive, poly_gcd};
pub use order::VarOrder;
pub use parse::parse_poly_file;
pub use polynomial::{grlex_cmp, Exponents, Polynomial};
pub use roots::{isolate_real_roots, IsolatingInterval};
pub use sqfree::{squarefree_decompose, squarefree_part, SquareFreeDecomposition};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable order must not be empty")]
    EmptyOrder,
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable orders differ: [{left}] vs [{right}]")]
    OrderMismatch { left: String, right: String },
    #[error("division is not exact")]
    NotExact,
    #[error("division by zero")]
    DivisionByZero,
    #[error("no value assigned to `{0}`")]
    MissingAssignment(String),
    #[error("zero polynomial is not allowed here")]
    ZeroInput,
    #[error("polynomial is not univariate")]
    NotUnivariate,
    #[error("polynomial is not square-free")]
    NotSquareFree,
}
