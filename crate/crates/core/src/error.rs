use thiserror::Error;

/// Errors raised by graph construction and the property checkers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: self-loop on vertex `{label}`")]
    SelfLoop { line: usize, label: String },

    #[error("line {line}: malformed line `{text}`")]
    Malformed { line: usize, text: String },

    #[error("self-loop on vertex {0}")]
    LoopEdge(usize),

    #[error("vertex id {id} out of range for a graph on {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },

    #[error("graph has an isolated vertex `{0}`")]
    IsolatedVertex(String),

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("graph is not connected")]
    Disconnected,

    #[error("graph contains a cycle")]
    Cyclic,

    #[error("graph contains the triangle {0:?}")]
    TriangleFound([String; 3]),

    #[error("graph has no edges")]
    Edgeless,

    #[error("graph has {n} vertices, at least {required} needed")]
    TooFewVertices { n: usize, required: usize },

    #[error("k must be 1 or 2, got {0}")]
    UnsupportedK(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("bad gallery descriptor `{0}`")]
    BadDescriptor(String),

    #[error("unknown element label `{0}`")]
    UnknownLabel(String),

    #[error("instance too large: {what} is {size}, limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("the unit system of the set family is infeasible")]
    InfeasibleSystem,

    #[error("budget of {0} steps exhausted")]
    BudgetExhausted(u64),

    #[error("malformed certificate: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
