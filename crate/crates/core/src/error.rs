use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("enumeration limit exceeded: n = {n} is above the cap of {cap}")]
    EnumerationLimit { n: usize, cap: usize },

    #[error("model mismatch: {0}")]
    ModelMismatch(String),

    #[error("estimation error: {0}")]
    Estimation(String),

    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(String),

    #[error("{count} of {runs} runs censored at n = {n} (max_generations = {cap})")]
    Censored {
        n: usize,
        count: usize,
        runs: usize,
        cap: u64,
    },

    #[error("parse error in {path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Shape(_) => "shape",
            Error::Config(_) => "config",
            Error::Argument(_) => "argument",
            Error::Domain(_) => "domain",
            Error::EnumerationLimit { .. } => "enumeration_limit",
            Error::ModelMismatch(_) => "model_mismatch",
            Error::Estimation(_) => "estimation",
            Error::UndefinedCorrelation(_) => "undefined_correlation",
            Error::Censored { .. } => "censored",
            Error::Parse { .. } => "parse",
            Error::Io { .. } => "io",
        }
    }
}
