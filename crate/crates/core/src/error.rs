//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("general position violated: {0}")]
    GeneralPosition(String),

    #[error("not a lattice-face polytope: {0}")]
    NotLatticeFace(String),

    #[error("input is not a simplex: {0}")]
    NotSimplex(String),

    #[error("vertices are not all lattice points: {0}")]
    NotIntegral(String),

    #[error("zero argument: {0}")]
    ZeroArgument(String),

    #[error("resource budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("generation failed: {0}")]
    GenerationFailed(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
