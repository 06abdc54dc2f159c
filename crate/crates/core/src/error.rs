use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge ({0}, {1}) is not in the graph")]
    MissingEdge(usize, usize),
    #[error("edge ({0}, {1}) is already in the graph")]
    EdgeExists(usize, usize),
    #[error("{what}: size {size} exceeds the limit {limit}")]
    LimitExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("power iteration stopped after {iterations} iterations with residual {residual:e}")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error(
        "partition is not equitable: vertices {u} and {v} of class {class} have row sums {sum_u} and {sum_v} into class {into}"
    )]
    NotEquitable {
        class: usize,
        into: usize,
        u: usize,
        v: usize,
        sum_u: usize,
        sum_v: usize,
    },
    #[error("Perron vector is not unit norm (norm {0})")]
    NonUnitVector(f64),
    #[error("no admissible graph: {0}")]
    EmptyFamily(String),
}
