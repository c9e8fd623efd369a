use thiserror::Error;

use crate::linalg::LinalgError;
use crate::superalg::Violation;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid basis: {0}")]
    Basis(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("bracket [{left}, {right}] listed twice")]
    DuplicateBracket { left: String, right: String },
    #[error("not a Lie superalgebra: {0}")]
    InvalidAlgebra(Violation),
    #[error("not a module: {0}")]
    InvalidModule(Violation),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("span of {0:?} is not an ideal")]
    NotIdeal(Vec<String>),
    #[error("ideal {0:?} is not abelian")]
    IdealNotAbelian(Vec<String>),
    #[error("map is not even: {0}")]
    NotEven(String),
    #[error("map is not homogeneous")]
    NotHomogeneous,
    #[error("cochain violates {0}")]
    BadCochain(String),
    #[error("map is not a derivation")]
    NotDerivation,
    #[error("cochain is not a 2-cocycle")]
    NotCocycle,
    #[error("map is not in {set}: {reason}")]
    NotMember { set: &'static str, reason: String },
    #[error("map is not invertible")]
    NotInvertible,
    #[error("invalid section: {0}")]
    InvalidSection(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
