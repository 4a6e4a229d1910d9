use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid vertex: {0}")]
    InvalidVertex(String),

    #[error("dimension mismatch: {0}")]
    Mismatch(String),

    #[error("level {level} is out of range for this operation (max {max})")]
    OutOfRange { level: usize, max: usize },

    #[error("resource bound exceeded: {what} = {requested} > {bound}")]
    ResourceBound {
        what: &'static str,
        requested: usize,
        bound: usize,
    },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
