use std::io::Write;

use serde::Serialize;

use crate::error::HarnessError;

pub const HEADER: [&str; 11] = [
    "instance_name",
    "n",
    "edge_count",
    "algorithm",
    "seed",
    "clique_size",
    "valid",
    "maximal",
    "iterations",
    "wall_time_ms",
    "converged",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub instance_name: String,
    pub n: usize,
    pub edge_count: usize,
    pub algorithm: String,
    pub seed: u64,
    /// Zero unless `valid`.
    pub clique_size: usize,
    pub valid: bool,
    pub maximal: bool,
    pub iterations: usize,
    pub wall_time_ms: f64,
    pub converged: bool,
}

/// Writes the header row followed by `records`, even when there are none.
pub fn write_csv<W: Write>(records: &[BenchRecord], w: W) -> Result<(), HarnessError> {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    out.write_record(HEADER)?;
    for r in records {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}
