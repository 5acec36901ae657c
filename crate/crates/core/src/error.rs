use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Operands drawn from incompatible operator alphabets, mismatched noise
    /// steps, and similar structural misuse.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A parameter outside its admissible range (negative rates, `mu + nu != 1`, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Attempt to advance a flow past the end of its time grid.
    #[error("step {step} out of range for a grid with {n_steps} steps")]
    StepOverflow { step: usize, n_steps: usize },

    /// Malformed or inconsistent run configuration.
    #[error("config error: {0}")]
    Config(String),

    /// Command-line misuse (unknown experiment, bad sweep axis, ...).
    #[error("usage error: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid_input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn invalid_parameter(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
