use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("edge ({u}, {v}) has an endpoint outside [0, {n})")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("density {0} is outside [0, 1]")]
    InvalidDensity(f64),
    #[error("vertex {vertex} is outside [0, {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertices {0} and {1} are not adjacent")]
    NotAClique(usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing problem line (`p edge <n> <m>`)")]
    MissingProblemLine,
    #[error("missing header line (`<rows> <cols> <nnz>`)")]
    MissingHeader,
    #[error("word-sharing threshold must be at least 1")]
    InvalidThreshold,
    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for GraphError {
    fn from(e: std::io::Error) -> Self {
        GraphError::Io(e.to_string())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("graph has {n} vertices, oracle limit is {limit}; use a smaller instance")]
    TooManyVertices { n: usize, limit: usize },
    #[error("more than {limit} maximal cliques; use a smaller instance")]
    TooManyCliques { limit: usize },
    #[error("graph has no vertices")]
    NoVertices,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("vector has length {got}, graph has {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("no edges: every maximal clique is a singleton")]
    NoEdges,
    #[error("stationarity residual is undefined at u = 0")]
    ZeroVector,
    #[error("vᵀM_d v = {0} is not positive")]
    NonPositiveCurvature(f64),
    #[error("non-finite value at outer iteration {iteration} (d = {d})")]
    NonFinite {
        iteration: usize,
        d: f64,
        u: Vec<f64>,
    },
    #[error("invalid solver input: {0}")]
    InvalidInput(String),
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BaselineError {
    #[error("support is an independent set (uᵀAu = 0); update undefined")]
    IndependentSupport,
    #[error("graph has no edges")]
    NoEdges,
    #[error("vector has length {got}, graph has {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid baseline configuration: {0}")]
    InvalidConfig(String),
}
