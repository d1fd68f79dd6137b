use r1clique::{BaselineError, GraphError, OracleError, SolverError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Graph { path: String, source: GraphError },
    #[error(transparent)]
    Generator(#[from] GraphError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Baseline(#[from] BaselineError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("invalid random spec `{spec}`: {msg}")]
    RandomSpec { spec: String, msg: String },
    #[error("restarts must be at least 1")]
    NoRestarts,
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
