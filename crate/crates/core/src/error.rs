use thiserror::Error;

use crate::algebra::Rational;

/// Errors raised by the exact pipeline.
#[derive(Debug, Error)]
pub enum CrError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("t = {0} is not admissible: strict pseudoconvexity needs 1 − t² > 0")]
    NotPseudoconvex(Rational),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("input is not real-valued: {0}")]
    NonReal(String),

    #[error("identity `{identity}` failed at t = {t} on witness {witness}")]
    IdentityFailure {
        identity: String,
        t: Rational,
        witness: String,
    },

    #[error("internal consistency failure: {0}")]
    Inconsistency(String),

    #[error("V_{k} is not invariant at t = {t}: residual {residual}")]
    InvarianceViolation { k: usize, t: Rational, residual: String },

    #[error("seed rejected: {0}")]
    SeedRejected(String),

    #[error("Gram matrix is not positive definite: {0}")]
    NotPositiveDefinite(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = CrError> = std::result::Result<T, E>;
