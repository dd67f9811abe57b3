use thiserror::Error;

use crate::omega::OmegaKind;

/// Errors produced by the numerical library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid shape {rows}x{cols}: {reason}")]
    InvalidShape {
        rows: usize,
        cols: usize,
        reason: &'static str,
    },

    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian: |M - M^H|_F = {deviation:.3e} exceeds {bound:.3e}")]
    NotHermitian { deviation: f64, bound: f64 },

    #[error("matrix is not unitary: |U^H U - I|_F = {deviation:.3e} exceeds {bound:.3e}")]
    NotUnitary { deviation: f64, bound: f64 },

    #[error("{routine} did not converge after {sweeps} sweeps")]
    NoConvergence { routine: &'static str, sweeps: usize },

    #[error("pair is not anticommuting (classified as {kind:?})")]
    NotAnticommuting { kind: OmegaKind },

    #[error("anticommutation violated: {0}")]
    AnticommutationViolated(String),

    #[error("invalid canonical form: {0}")]
    InvalidCanonicalForm(String),

    #[error("invalid block specification: {0}")]
    InvalidBlockSpec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("state is not an eigenstate of operator {index} (residual {residual:.3e})")]
    NotEigenstate { index: usize, residual: f64 },

    #[error("assignment space of {count} exceeds the enumeration limit {limit}")]
    TooManyAssignments { count: u128, limit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
