//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by construction, linear algebra and protocol operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("matrix is not Hermitian: max |H - H^dag| entry is {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("matrix is numerically defective: |l^dag r| = {overlap:e} for eigenvalue {index}")]
    Defective { index: usize, overlap: f64 },

    #[error("eigensolver did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("state vector is not normalized: norm = {norm}")]
    NotNormalized { norm: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("propagator is not a contraction: max singular value = {sigma}")]
    NotContraction { sigma: f64 },

    #[error("distillation extinguished at step {step}: conditioned branch has vanishing probability")]
    DistillationExtinguished { step: usize },

    #[error("dark target: f0({n_bar}, eta) = {value:e}, no measurement interval preserves it")]
    DarkTarget { n_bar: usize, value: f64 },

    #[error("no zero exists: f0({n_bar}, eta) is strictly positive")]
    NoZeroExists { n_bar: usize },

    #[error("closed form requires a carrier first coupling (p = 0), got p = {p}")]
    UnsupportedClosedForm { p: i32 },

    #[error("no surviving subspace: every eigenvalue vanishes")]
    NoSurvivingSubspace,

    #[error("inconsistent statistics: analytic success rate is 0 but {successes} trajectories succeeded")]
    InconsistentStatistics { successes: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
