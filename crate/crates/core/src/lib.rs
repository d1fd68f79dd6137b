//! Maximal clique finding by symmetric rank-one nonnegative matrix
//! approximation.
//!
//! For a graph with adjacency `A` and penalty `d ≥ 0`, let
//! `M_d = (1+d)(A + I) − d·11ᵀ`. Nontrivial stationary points of
//! `min_{u ≥ 0} ‖M_d − uuᵀ‖²_F` approach clique indicators as `d` grows, and
//! for `d ≥ 2n‖A + I‖_F` rounding them at 0.5 yields a clique. [`solver`]
//! implements the projected gradient scheme that exploits this;
//! [`baselines`] holds two Motzkin–Straus methods for comparison and
//! [`oracle`] gives exact answers on small graphs.

pub mod baselines;
pub mod clique;
pub mod cooccurrence;
pub mod dimacs;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod solver;

pub use baselines::{BaselineConfig, BaselineKind, BaselineRun};
pub use clique::CliqueSet;
pub use error::{BaselineError, GraphError, OracleError, SolverError};
pub use graph::Graph;
pub use oracle::OracleLimits;
pub use solver::{SolverConfig, SolverResult, SolverState};
