use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("vertex {vertex} out of range 1..={h}")]
    VertexOutOfRange { vertex: usize, h: usize },

    #[error("invalid blow-up: {0}")]
    InvalidBlowUp(String),

    #[error("{0:?} is not an edge of the base hypergraph")]
    NotAnEdge(Vec<usize>),

    #[error("hypergraph is not connected")]
    Disconnected,

    #[error("tree: {0}")]
    Tree(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("enumeration guard exceeded: {needed} > {guard}")]
    GuardExceeded { needed: String, guard: u64 },

    #[error("integer stream exhausted after {0} draws")]
    StreamExhausted(usize),

    #[error("corrupted encoding at step {step}: {reason}")]
    Decode { step: usize, reason: String },

    #[error("invariant broken at step {step}: {reason}")]
    Invariant { step: usize, reason: String },

    #[error("inconsistent bounds: {0}")]
    InconsistentBounds(String),

    #[error("no positive real root: {0}")]
    NoRoot(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
