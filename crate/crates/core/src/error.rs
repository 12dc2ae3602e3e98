use thiserror::Error;

/// Crate-wide error type. `Input` covers malformed input (CLI exit code 1),
/// `Domain` covers violated preconditions and infeasibility (exit code 2).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{0}")]
    Domain(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) => 1,
            Error::Domain(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
