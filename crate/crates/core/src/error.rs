use thiserror::Error;

/// Errors raised by instance parsing, validation and solver preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("vertex {id} is out of range 1..={n}")]
    VertexOutOfRange { id: usize, n: usize },
    #[error("{what} must be positive, got {value}")]
    NonPositiveWeight { what: String, value: String },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("invalid vertex set: {0}")]
    InvalidSet(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// True for errors caused by the solver's preconditions rather than by
    /// malformed input.
    pub fn is_precondition(&self) -> bool {
        matches!(self, Error::Precondition(_) | Error::NotATree(_))
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
