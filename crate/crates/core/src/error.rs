use thiserror::Error;

use crate::sset::Violation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("invalid simplicial set ({} violations, first: {})", .0.len(), .0.first().map(|v| v.to_string()).unwrap_or_default())]
    InvalidSimplicialSet(Vec<Violation>),
    #[error("invalid simplicial category: {0}")]
    InvalidCategory(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid map of simplicial sets: {0}")]
    InvalidMap(String),
    #[error("unknown object {0}")]
    UnknownObject(usize),
    #[error("degree {degree} is outside the tracked range of dimension bound {dim_bound}")]
    DimensionBound { degree: usize, dim_bound: usize },
    #[error("shape mismatch: {0}")]
    Mismatch(String),
    #[error("lifting square does not commute: {0}")]
    NonCommutingSquare(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("unsupported attachment: {0}")]
    UnsupportedAttachment(String),
    #[error("obstruction not certified: {0}")]
    ObstructionNotCertified(String),
    #[error("marking inconsistent with category: {0}")]
    MarkingInconsistent(String),
    #[error("not a 0-simplex: {0}")]
    NotAZeroSimplex(String),
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
