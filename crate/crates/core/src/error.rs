use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),

    #[error("graph on {n} vertices exceeds the limit of {limit} for this operation")]
    TooLarge { n: usize, limit: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("premise violated: {0}")]
    Premise(String),

    #[error("vertex set {0:?} is not a separator")]
    NotASeparator(Vec<usize>),

    #[error("instance exceeds the oracle budget: {0}")]
    OracleBudget(String),

    #[error("invalid template: {0}")]
    InvalidTemplate(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph6 input: {0}")]
    Graph6(String),

    #[error("checkpoint: {0}")]
    Checkpoint(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
