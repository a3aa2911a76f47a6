use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Request exceeds a configured resource limit.
    #[error("capacity error: {requested} exceeds limit {limit}{hint}")]
    Capacity {
        requested: u64,
        limit: u64,
        hint: &'static str,
    },

    /// Estimator denominator vanished or changed sign.
    #[error("pole: {0}")]
    Pole(String),

    /// Caller-side precondition (bad dataset shape, invalid options).
    #[error("invalid input: {0}")]
    Precondition(String),

    #[error("numerical breakdown: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn capacity(requested: u64, limit: u64, hint: &'static str) -> Self {
        Error::Capacity { requested, limit, hint }
    }

    /// Process exit code for the command-line front end: 1 for usage-type
    /// problems, 2 for domain, capacity and numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Precondition(_) | Error::Io(_) | Error::Csv(_) | Error::Json(_) => 1,
            Error::Domain(_) | Error::Capacity { .. } | Error::Pole(_) | Error::Numerical(_) => 2,
        }
    }
}
