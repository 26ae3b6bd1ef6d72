use thiserror::Error;

#[derive(Debug, Error)]
pub enum McdaError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("row {row}, column {column}: cannot parse {value:?} as a number")]
    NonNumeric {
        row: usize,
        column: usize,
        value: String,
    },
    #[error("unknown direction token {0:?} (expected max or min)")]
    UnknownDirection(String),
    #[error("criterion {criterion:?}: weight {weight} is negative or not finite")]
    BadWeight { criterion: String, weight: f64 },
    #[error("invalid data: {0}")]
    Data(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate column {column} for {what}")]
    Degenerate { column: usize, what: String },
    #[error("criterion weights are required but missing")]
    MissingWeights,
    #[error("invalid parameters for {method}: {reason}")]
    Params { method: String, reason: String },
    #[error("{method}: {reason}")]
    Method { method: String, reason: String },
    #[error("unknown method {0:?}")]
    UnknownMethod(String),
    #[error("unknown template {0:?}")]
    UnknownTemplate(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Chat(#[from] crate::llm::ChatError),
}

impl McdaError {
    pub(crate) fn params(method: impl Into<String>, reason: impl Into<String>) -> Self {
        McdaError::Params {
            method: method.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn method(method: impl Into<String>, reason: impl Into<String>) -> Self {
        McdaError::Method {
            method: method.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        McdaError::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    /// Error family, used for CLI exit codes and FFI status codes.
    pub fn kind(&self) -> ErrorKind {
        match self {
            McdaError::Dimension(_)
            | McdaError::NonNumeric { .. }
            | McdaError::UnknownDirection(_)
            | McdaError::BadWeight { .. }
            | McdaError::Data(_)
            | McdaError::Parse(_)
            | McdaError::Io { .. } => ErrorKind::Data,
            McdaError::Degenerate { .. }
            | McdaError::MissingWeights
            | McdaError::Params { .. }
            | McdaError::Method { .. }
            | McdaError::UnknownMethod(_)
            | McdaError::UnknownTemplate(_) => ErrorKind::Method,
            McdaError::Chat(e) => e.kind(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Data,
    Method,
    Network,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Usage => 1,
            ErrorKind::Data => 2,
            ErrorKind::Method => 3,
            ErrorKind::Network => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, McdaError>;
