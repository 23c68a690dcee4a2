use chainring_core::Error as CoreError;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    NoSolution(String),
    /// A `verify` run found a discrepancy.
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Parse(_) => "parse",
            CliError::Domain(_) => "domain",
            CliError::Resource(_) => "resource",
            CliError::Io(_) => "io",
            CliError::NoSolution(_) => "no_solution",
            CliError::Verification(_) => "verification",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind(), "message": self.to_string() } })
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Parse(msg) => CliError::Parse(msg),
            CoreError::NoSolution => CliError::NoSolution("no codeword within the decoding radius".into()),
            CoreError::ResourceExceeded(_) | CoreError::TooLarge | CoreError::BudgetExceeded => CliError::Resource(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
