//! Exact rational arithmetic and sparse multivariate polynomial algebra.

mod parse;
mod poly;
mod rational;
mod resultant;
mod univariate;

pub use parse::parse_poly;
pub use poly::{Homogeneity, MultiPoly};
pub use rational::{binomial, int, parse_rational, rat, Rational};
pub use resultant::{
    binary_form_discriminant, determinant, discriminant, resultant, sylvester_resultant,
};
pub use univariate::{binary_form_squarefree, is_squarefree, SquarefreeReport, UniPoly};

use alloc::string::String;

/// Errors raised by the polynomial layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("`{0}` is not one of the polynomial's variables")]
    NotAVariable(String),
    #[error("polynomial has degree zero in `{0}`")]
    DegreeZero(String),
    #[error("degree {degree} in `{var}` is below the required {required}")]
    DegreeTooSmall {
        var: String,
        degree: u32,
        required: u32,
    },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not univariate in `{0}`")]
    NotUnivariate(String),
    #[error("polynomial is not a binary form in `{0}`, `{1}`")]
    NotBinaryForm(String, String),
}
