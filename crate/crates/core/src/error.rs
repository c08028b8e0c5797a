use thiserror::Error;

use crate::logic::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("instance signature does not match the context signature")]
    SignatureMismatch,

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("time index {0} is outside the time chain")]
    TimeOutOfRange(usize),

    #[error("instance is not a member of the context")]
    NotMember,

    #[error("time `{0}` has no successor")]
    NoSuccessor(String),

    #[error("enumeration needs {required} elements but the guard is {guard}")]
    GuardExceeded { required: String, guard: usize },

    #[error("snapshot {0} is reachable but missing from the iterator domain")]
    MissingSnapshot(String),

    #[error("snapshot {0} has an empty image before the final step")]
    EmptyImage(String),

    #[error("formula `{0}` is outside the formula universe")]
    OutOfUniverse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn unknown(kind: &'static str, name: impl Into<String>) -> Self {
        Error::Unknown {
            kind,
            name: name.into(),
        }
    }

    pub(crate) fn format(line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            line,
            message: message.into(),
        }
    }
}
