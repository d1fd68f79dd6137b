use std::fmt;
use std::time::Instant;

use clap::ValueEnum;
use r1clique::baselines::{extend_to_maximal, postprocess_greedy, run_baseline, weight_order};
use r1clique::solver::solve;
use r1clique::{BaselineConfig, BaselineKind, CliqueSet, Graph, SolverConfig};
use rayon::prelude::*;

use crate::error::HarnessError;
use crate::instance::Instance;
use crate::record::BenchRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Algo {
    R1nm,
    Pelillo,
    Ding,
}

impl Algo {
    pub const ALL: [Algo; 3] = [Algo::R1nm, Algo::Pelillo, Algo::Ding];

    pub fn tag(self) -> &'static str {
        match self {
            Algo::R1nm => "r1nm",
            Algo::Pelillo => "pelillo",
            Algo::Ding => "ding",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunOptions {
    pub d0: Option<f64>,
    pub dmax: Option<f64>,
    pub eta: f64,
    /// Greedily extend every valid clique to a maximal one.
    pub maximalize: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            d0: None,
            dmax: None,
            eta: BaselineConfig::default().eta,
            maximalize: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutcome {
    pub record: BenchRecord,
    /// Reported vertex set; a clique iff `record.valid`.
    pub vertices: Vec<usize>,
}

fn record_for(
    inst: &Instance,
    algo: Algo,
    seed: u64,
    vertices: &[usize],
    iterations: usize,
    wall_time_ms: f64,
    converged: bool,
) -> BenchRecord {
    let g = &inst.graph;
    let valid = !vertices.is_empty() && g.is_clique(vertices);
    BenchRecord {
        instance_name: inst.name.clone(),
        n: g.n(),
        edge_count: g.edge_count(),
        algorithm: algo.tag().to_string(),
        seed,
        clique_size: if valid { vertices.len() } else { 0 },
        valid,
        maximal: valid && g.is_maximal_clique(vertices),
        iterations,
        wall_time_ms,
        converged,
    }
}

fn maximalized(g: &Graph, vertices: Vec<usize>, weights: &[f64]) -> Vec<usize> {
    match CliqueSet::new(g, vertices.clone()) {
        Ok(c) if !c.is_empty() => extend_to_maximal(g, &c, &weight_order(weights)).into_vertices(),
        _ => vertices,
    }
}

/// One run of `algo`. The seed only affects `r1nm`; the baselines start
/// from a fixed point.
pub fn run_once(inst: &Instance, algo: Algo, seed: u64, opts: &RunOptions) -> Result<RunOutcome, HarnessError> {
    let g = &inst.graph;
    let started = Instant::now();
    let (mut vertices, weights, iterations, converged) = match algo {
        Algo::R1nm => {
            let cfg = SolverConfig {
                d0_override: opts.d0,
                d_max_override: opts.dmax,
                ..SolverConfig::with_seed(seed)
            };
            let r = solve(g, &cfg)?;
            (r.rounded, r.u_final, r.iterations, r.converged)
        }
        Algo::Pelillo | Algo::Ding => {
            let kind = if algo == Algo::Pelillo {
                BaselineKind::Pelillo
            } else {
                BaselineKind::Ding
            };
            let cfg = BaselineConfig {
                eta: opts.eta,
                ..BaselineConfig::default()
            };
            let r = run_baseline(g, kind, &cfg)?;
            let c = postprocess_greedy(g, &r.u);
            (c.into_vertices(), r.u, r.iterations, r.converged)
        }
    };
    if opts.maximalize {
        vertices = maximalized(g, vertices, &weights);
    }
    let wall = (started.elapsed().as_secs_f64() * 1e6).round() / 1e3;
    let record = record_for(inst, algo, seed, &vertices, iterations, wall, converged);
    Ok(RunOutcome { record, vertices })
}

/// Runs seeds `seed..seed + restarts` in parallel; the output is in seed order.
pub fn run_restarts(
    inst: &Instance,
    algo: Algo,
    seed: u64,
    restarts: usize,
    opts: &RunOptions,
) -> Result<Vec<RunOutcome>, HarnessError> {
    if restarts == 0 {
        return Err(HarnessError::NoRestarts);
    }
    (0..restarts as u64)
        .into_par_iter()
        .map(|i| run_once(inst, algo, seed + i, opts))
        .collect()
}

/// Largest valid clique, earliest seed on ties.
pub fn best(outcomes: &[RunOutcome]) -> Option<&RunOutcome> {
    outcomes
        .iter()
        .rev()
        .max_by_key(|o| (o.record.valid, o.record.clique_size))
}
