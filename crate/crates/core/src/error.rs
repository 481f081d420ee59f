use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("frequency outside the supported regime: {0}")]
    Frequency(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unsupported dimension d = {0}")]
    UnsupportedDimension(usize),

    #[error("singular configuration: {0}")]
    Singular(String),

    #[error("invalid elastic medium: {0}")]
    InvalidMedium(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("continued fraction did not converge after {iterations} iterations (last increment {last_increment:e})")]
    NoConvergence { iterations: usize, last_increment: f64 },

    #[error("point x1 = {x1} lies outside the working collar (limit {limit})")]
    OutsideCollar { x1: f64, limit: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
