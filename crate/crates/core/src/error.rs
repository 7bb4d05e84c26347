use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph is not simple: {0}")]
    NotSimple(String),

    #[error("graph is not 2-vertex-connected")]
    NotTwoConnected,

    #[error("vertex {vertex} has degree {degree}, at least {required} required")]
    MinDegreeTooLow {
        vertex: usize,
        degree: usize,
        required: usize,
    },

    #[error("{what} is {size}, exceeding the exhaustive-search limit of {limit}")]
    InstanceTooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("ear index {index} out of range ({len} ears)")]
    EarIndexOutOfRange { index: usize, len: usize },

    #[error("ear {0} is trivial")]
    TrivialEar(usize),

    #[error("ear decomposition is not nice")]
    NotNice,

    #[error("gadget malformed: {0}")]
    GadgetMalformed(String),

    #[error("could not generate a {kind} instance after {attempts} attempts")]
    GenerationFailed { kind: String, attempts: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::PreconditionViolated(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::InvariantViolation(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
