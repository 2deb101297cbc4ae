use thiserror::Error;

/// Data-model and construction errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid IRI `{text}`: {reason}")]
    InvalidIri { text: String, reason: String },
    #[error("malformed statement: {0}")]
    MalformedStatement(String),
}

/// Domain violations raised by the sort algebras.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("undefined instant has no position in time")]
    UndefinedInstant,
    #[error("cannot parse `{0}` as xsd:dateTime")]
    BadDateTime(String),
    #[error("interval start {start} is after end {end}")]
    InvertedInterval { start: String, end: String },
    #[error("unknown region `{0}` (not in the containment table)")]
    UnknownRegion(String),
    #[error("sequence node has no ordinal")]
    NoOrdinal,
    #[error("{0}")]
    Domain(String),
}

/// Canonical JSON decode failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("schema violation at key `{key}`: {reason}")]
    Schema { key: String, reason: String },
}

impl DecodeError {
    pub(crate) fn schema(key: impl Into<String>, reason: impl Into<String>) -> Self {
        DecodeError::Schema {
            key: key.into(),
            reason: reason.into(),
        }
    }
}

/// Errors reading or writing tables and graph files.
#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Failures while evaluating a rule term for one binding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("`{function}`: {message}")]
    Type { function: String, message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

impl EvalError {
    pub(crate) fn ty(function: &str, message: impl Into<String>) -> Self {
        EvalError::Type {
            function: function.to_string(),
            message: message.into(),
        }
    }
}
