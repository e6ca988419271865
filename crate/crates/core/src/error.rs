use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is empty")]
    Empty,
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not Hermitian: |a_ij - conj(a_ji)| = {asymmetry:e} at ({row}, {col})")]
    NotHermitian { row: usize, col: usize, asymmetry: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("trace is {trace}, expected 1")]
    InvalidTrace { trace: f64 },
    #[error("eigenvalue {eigenvalue:e} is negative beyond the clipping tolerance")]
    NegativeEigenvalue { eigenvalue: f64 },
    #[error("matrix is not positive definite (minimum eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },
    #[error("state is not faithful (minimum eigenvalue {min_eigenvalue:e})")]
    NotFaithful { min_eigenvalue: f64 },
    #[error("eigendecomposition did not converge")]
    EigenFailure,
    #[error("unknown function name `{0}`")]
    UnknownName(String),
    #[error("parameter {name} = {value} is out of range")]
    ParameterOutOfRange { name: &'static str, value: f64 },
    #[error("function `{0}` is not regular (f(0) = 0)")]
    NotRegular(String),
    #[error("function `{name}` violates {property} at t = {t}")]
    InvalidFunction {
        name: String,
        property: &'static str,
        t: f64,
    },
    #[error("weight value {value} at lambda = {lambda} is outside [0, 1]")]
    WeightOutOfRange { lambda: f64, value: f64 },
    #[error("quadrature error estimate {estimate:e} exceeds tolerance")]
    QuadratureFailure { estimate: f64 },
    #[error("lattice operation needs a weight function for `{0}`")]
    MissingWeight(String),
    #[error("only a two-dimensional first subsystem is supported, got {0}")]
    UnsupportedDimension(usize),
    #[error("rank {rank} is out of range for dimension {dim}")]
    RankOutOfRange { rank: usize, dim: usize },
    #[error("probabilities sum to {sum}, expected 1")]
    ProbsNotNormalized { sum: f64 },
    #[error("factorization {d1}x{d2} does not match dimension {dim}")]
    InvalidFactorization { d1: usize, d2: usize, dim: usize },
    #[error("channel is not trace preserving (deviation {deviation:e})")]
    NotTracePreserving { deviation: f64 },
    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
