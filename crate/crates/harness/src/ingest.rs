use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use r1clique::cooccurrence::DocTermMatrix;
use r1clique::dimacs::write_dimacs;

use crate::error::HarnessError;

/// Writes `<stem>_p<p>.clq` into `out_dir` for each threshold `p`.
pub fn ingest_text(input: &Path, ps: &[usize], out_dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    let path = input.display().to_string();
    let matrix = DocTermMatrix::parse(BufReader::new(File::open(input)?))
        .map_err(|source| HarnessError::Graph { path: path.clone(), source })?;
    let stem = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "corpus".into());
    std::fs::create_dir_all(out_dir)?;
    let mut written = Vec::with_capacity(ps.len());
    for &p in ps {
        let g = matrix
            .cooccurrence_graph(p)
            .map_err(|source| HarnessError::Graph { path: path.clone(), source })?;
        log::info!("{stem} p={p}: n = {}, edges = {}", g.n(), g.edge_count());
        let out = out_dir.join(format!("{stem}_p{p}.clq"));
        let comment = format!("word co-occurrence graph of {stem}, documents sharing at least {p} words");
        write_dimacs(&g, BufWriter::new(File::create(&out)?), Some(&comment))?;
        written.push(out);
    }
    Ok(written)
}
