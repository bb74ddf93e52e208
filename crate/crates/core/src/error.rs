use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("structural mismatch: {0}")]
    Structural(String),

    #[error("singular value: constant term of {field} vanishes at the evaluation point")]
    Singular { field: String },

    #[error("jet order {required} required by {check} (have {available})")]
    OrderBudget {
        check: String,
        required: usize,
        available: usize,
    },

    #[error("unsupported dimension n = {0}: the Weyl tensor formula needs n >= 4")]
    UnsupportedDimension(usize),

    #[error("family violation: {0}")]
    Family(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("polynomial parse error at column {column}: {message}")]
    Polynomial { column: usize, message: String },

    #[error("config error at {field}: {message}")]
    Config { field: String, message: String },

    #[error("mode error: {0}")]
    Mode(String),

    #[error("run error: {0}")]
    Run(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }
}
