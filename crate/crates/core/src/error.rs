use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("objective is +inf everywhere on the search region")]
    Infeasible,

    #[error("iteration budget of {iterations} exhausted (best gap {gap:e})")]
    Budget {
        iterations: usize,
        best: Vec<f64>,
        gap: f64,
    },

    #[error("at lambda = {lam}: {source}")]
    AtLambda {
        lam: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Prefixes the message of an input error; other errors become input
    /// errors carrying their display text.
    pub(crate) fn context(self, prefix: &str) -> Self {
        match self {
            Error::InvalidInput(msg) => Error::InvalidInput(format!("{prefix}: {msg}")),
            other => Error::InvalidInput(format!("{prefix}: {other}")),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
