use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} supports at most {max} vertices, got {n}")]
    UnsupportedSize {
        what: &'static str,
        n: usize,
        max: usize,
    },

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// An input lies outside the range on which a closed form is known to hold.
    #[error("outside the proven domain: requires {bound}")]
    Domain { bound: String },

    #[error("degree sequence is not graphical (Erdős–Gallai fails at k = {index})")]
    NotGraphical { index: usize },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("arithmetic overflow evaluating {0}")]
    Overflow(&'static str),
}

impl Error {
    pub(crate) fn domain(bound: impl Into<String>) -> Self {
        Error::Domain {
            bound: bound.into(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
