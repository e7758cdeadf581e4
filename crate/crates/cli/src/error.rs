use noulrich_core::AlgebraError;
use thiserror::Error;

/// Everything that ends a command with exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {at}: {message}")]
    Format { path: String, at: String, message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Usage(String),
    #[error("corpus entry `{id}`: {message}")]
    Corpus { id: String, message: String },
}
