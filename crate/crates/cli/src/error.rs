use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad invocation (missing or conflicting arguments).
    #[error("usage error: {0}")]
    Usage(String),
    /// Config file or argument failed to parse or validate.
    #[error("invalid configuration: {0}")]
    Validation(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("runtime error: {0}")]
    Runtime(String),
}

impl CliError {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Self::Io { context: context.into(), source }
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            Self::Usage(_) | Self::Validation(_) => ExitCode::from(2),
            Self::Io { .. } | Self::Runtime(_) => ExitCode::from(3),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
