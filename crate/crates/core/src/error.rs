use thiserror::Error;

use crate::model::CouplingKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {entries} entries")]
    NotSquare { entries: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max |M - M^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("density matrix trace is {trace}, expected 1")]
    NotUnitTrace { trace: f64 },

    #[error(
        "density matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})"
    )]
    NotPositive { min_eigenvalue: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("operation requires {expected} coupling, model has {found}")]
    WrongCoupling {
        expected: CouplingKind,
        found: CouplingKind,
    },

    #[error("integration failed: {0}")]
    Integration(String),

    #[error("grid too coarse: {points} points, need at least {required}")]
    GridTooCoarse { points: usize, required: usize },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
