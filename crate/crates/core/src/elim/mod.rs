//! Resultants, discriminants, Macaulay resultants and lex Gröbner
//! elimination.

pub mod generalized;
pub mod groebner;
pub mod macaulay;
pub mod resultant;

pub use generalized::{generalized_discriminant, generalized_resultant};
pub use groebner::groebner_lex;
pub use macaulay::{macaulay_resultant, MacaulaySystem};
pub use resultant::{
    cad_resultant, discriminant, discriminant_parts, sylvester_matrix, sylvester_resultant,
    SylvesterMatrix,
};

use num_traits::Signed;
use thiserror::Error;

use crate::poly::gcd::primitive;
use crate::poly::{PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElimError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("`{var}` does not occur in {which}")]
    ZeroDegree { var: String, which: String },
    #[error("degenerate resultant in `{var}`: {reason}")]
    Degenerate { var: String, reason: String },
    #[error("degree in `{var}` is {degree}, need at least 2")]
    DegreeTooLow { var: String, degree: u32 },
    #[error("expected {expected} polynomials, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("{0}")]
    Invalid(String),
}

/// Canonical representative up to sign and content: primitive with positive
/// leading coefficient, or the absolute value for constants.
pub fn canonical(p: &Polynomial) -> Polynomial {
    match p.constant_value() {
        Some(c) => Polynomial::constant(p.order(), c.abs()),
        None => primitive(p),
    }
}
