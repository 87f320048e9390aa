use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("series did not converge: {0}")]
    SeriesDiverged(String),
    #[error("inversion did not converge: {0}")]
    NoConvergence(String),
    #[error("characteristic function does not decay: {0}")]
    NonDecaying(String),
    #[error("sampler retry budget exhausted: {0}")]
    RetryBudget(String),
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error("non-finite value: {0}")]
    NonFinite(String),
    #[error("grid error: {0}")]
    Grid(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
