use thiserror::Error;
use zeno_core::design::DesignError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parameter `{key}`: {reason}")]
    Param { key: String, reason: String },
    #[error("{0}")]
    Domain(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("{context}: {source}")]
    Io { context: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Param { .. } | CliError::Domain(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub fn param(key: &str, reason: impl ToString) -> Self {
        CliError::Param { key: key.to_string(), reason: reason.to_string() }
    }

    pub fn domain(e: impl std::fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<DesignError> for CliError {
    fn from(e: DesignError) -> Self {
        match e {
            DesignError::Infeasible { .. } => CliError::Infeasible(e.to_string()),
            other => CliError::domain(other),
        }
    }
}
