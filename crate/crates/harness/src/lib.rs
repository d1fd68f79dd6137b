//! Experiment driver for the `r1clique` CLI: instance loading, restarted
//! runs of every algorithm, CSV records and invariant checks.

pub mod error;
pub mod ingest;
pub mod instance;
pub mod record;
pub mod runner;
pub mod verify;

pub use error::HarnessError;
pub use instance::{Instance, RandomSpec};
pub use record::BenchRecord;
pub use runner::{Algo, RunOptions, RunOutcome};
