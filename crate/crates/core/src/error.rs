use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix dimension must be 3 or 4, got {0}")]
    InvalidDimension(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("Jacobi eigen-solver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    EigenNoConvergence { sweeps: usize, off_norm: f64 },

    #[error("rank-reduced exponential requires a^3 = nu^2 a (residual {residual:e})")]
    RankReducedPrecondition { residual: f64 },

    #[error("conjugate-pair structure violated (residual {residual:e})")]
    ConjugatePairViolated { residual: f64 },

    #[error("Delta/k = {ratio} is not rational within tolerance; the system is aperiodic")]
    NotResonant { ratio: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
