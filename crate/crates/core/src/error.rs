use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("edge probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} must lie outside the set")]
    VertexInSet(usize),
    #[error("vertex set must be nonempty")]
    EmptySet,
    #[error("vertex set must be a nonempty proper subset of V")]
    NotProperSubset,
    #[error("vertices {0} and {1} are not adjacent")]
    NotAClique(usize, usize),
    #[error("coloring has {coloring} entries but graph has {graph} vertices")]
    SizeMismatch { coloring: usize, graph: usize },
    #[error("color {color} at vertex {vertex} is not below k={k}")]
    ColorOutOfRange { vertex: usize, color: usize, k: usize },
    #[error("{what}: limit {limit} exceeded")]
    CapExceeded { what: &'static str, limit: u64 },
    #[error("maximal-clique enumeration truncated at {0} cliques")]
    CliqueCapTruncated(u64),
    #[error("invalid parameter profile: {0}")]
    InvalidProfile(String),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
