use thiserror::Error;

/// Errors produced by graph construction, parsing, and the enumeration engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph order {0} is outside the supported range 1..=64")]
    OrderOutOfRange(usize),
    #[error("vertex {vertex} is out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("cannot remove every vertex of the graph")]
    RemovesAllVertices,
    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("malformed graph6 input: {0}")]
    Graph6(String),
    #[error("graph is not a {expected}")]
    WrongClass { expected: &'static str },
    #[error("order {order} exceeds the cap {cap} for {what}")]
    CapExceeded {
        what: &'static str,
        order: usize,
        cap: usize,
    },
    #[error("vertex {0} already belongs to the set")]
    AlreadyInSet(usize),
    #[error("vertex {0} appears in more than one constraint")]
    DuplicateConstraint(usize),
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T> = std::result::Result<T, Error>;
