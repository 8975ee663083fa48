//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("trace is {trace:.12} instead of 1")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semi-definite (most negative eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("eigenvalue {eigenvalue:.3e} is below the PSD tolerance")]
    NegativeEigenvalue { eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid subsystem subset: {reason}")]
    InvalidSubset { reason: String },

    #[error("parameter p = {p} is outside its valid range")]
    InvalidP { p: f64 },

    #[error("invalid shape: {reason}")]
    InvalidShape { reason: String },

    #[error("product state is rank-deficient (lambda_min = {lambda_min:.3e}); it lies on the boundary of the separable set and carries no ball")]
    RankDeficient { lambda_min: f64 },

    #[error("local filter factor {index} is numerically singular")]
    SingularFactor { index: usize },

    #[error("eigenvalue floor {floor} not reached after {attempts} resampling attempts")]
    FloorUnreachable { floor: f64, attempts: usize },

    #[error("operation requires a bipartite signature, got {subsystems} subsystems")]
    NotBipartite { subsystems: usize },

    #[error("decomposition has no full-rank component")]
    NoFullRankComponent,

    #[error("invalid radius {radius}; must be non-negative")]
    InvalidRadius { radius: f64 },
}
