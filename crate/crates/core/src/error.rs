use thiserror::Error;

pub type Result<T> = std::result::Result<T, FracError>;

#[derive(Debug, Error)]
pub enum FracError {
    #[error("pole of the gamma function at {0}")]
    Pole(f64),
    #[error("overflow evaluating {0}")]
    Overflow(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("divergent integral: {0}")]
    Divergence(String),
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl FracError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        FracError::Domain(msg.into())
    }
}
