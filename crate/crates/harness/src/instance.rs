use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use r1clique::dimacs::parse_dimacs;
use r1clique::Graph;

use crate::error::HarnessError;

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub graph: Graph,
}

/// `n=<int>,density=<float>[,seed=<int>]`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomSpec {
    pub n: usize,
    pub density: f64,
    pub seed: Option<u64>,
}

impl FromStr for RandomSpec {
    type Err = HarnessError;

    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        let fail = |msg: String| HarnessError::RandomSpec {
            spec: spec.to_string(),
            msg,
        };
        let (mut n, mut density, mut seed) = (None, None, None);
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| fail(format!("`{part}` is not key=value")))?;
            match key.trim() {
                "n" => n = Some(value.trim().parse().map_err(|e| fail(format!("n: {e}")))?),
                "density" | "p" => density = Some(value.trim().parse().map_err(|e| fail(format!("density: {e}")))?),
                "seed" => seed = Some(value.trim().parse().map_err(|e| fail(format!("seed: {e}")))?),
                other => return Err(fail(format!("unknown key `{other}`"))),
            }
        }
        Ok(RandomSpec {
            n: n.ok_or_else(|| fail("missing n".into()))?,
            density: density.ok_or_else(|| fail("missing density".into()))?,
            seed,
        })
    }
}

impl RandomSpec {
    /// Uses `default_seed` when the spec names none.
    pub fn build(&self, default_seed: u64) -> Result<Instance, HarnessError> {
        let seed = self.seed.unwrap_or(default_seed);
        Ok(Instance {
            name: random_name(self.n, self.density, seed),
            graph: Graph::random(self.n, self.density, seed)?,
        })
    }
}

pub fn random_name(n: usize, density: f64, seed: u64) -> String {
    format!("random_n{n}_p{density}_s{seed}")
}

pub fn load_dimacs(path: &Path) -> Result<Instance, HarnessError> {
    let file = File::open(path)?;
    let parsed = parse_dimacs(BufReader::new(file)).map_err(|source| HarnessError::Graph {
        path: path.display().to_string(),
        source,
    })?;
    for w in &parsed.warnings {
        log::warn!("{}: {w}", path.display());
    }
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    Ok(Instance {
        name,
        graph: parsed.graph,
    })
}

/// `.clq` files in `dir`, sorted by file name.
pub fn dimacs_files(dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|e| e == "clq"))
        .collect();
    files.sort();
    Ok(files)
}
