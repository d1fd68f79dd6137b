//! Motzkin–Straus comparison methods: the replicator update on the simplex,
//! its η-generalization on `{u ≥ 0 : Σ uᵢ^η = 1}`, and sorted-greedy
//! extraction of a clique from the final iterate.

use std::cmp::Ordering;
use std::time::Instant;

use crate::clique::CliqueSet;
use crate::error::BaselineError;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaselineKind {
    /// `uᵢ ← uᵢ (Au)ᵢ / uᵀAu`
    Pelillo,
    /// `uᵢ ← (uᵢ (Au)ᵢ / uᵀAu)^{1/η}`
    Ding,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BaselineConfig {
    pub eta: f64,
    /// Stop once `‖u⁽ᵏ⁺¹⁾ − u⁽ᵏ⁾‖² < tol`.
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        Self {
            eta: 1.05,
            tol: 1e-10,
            max_iterations: 100_000,
        }
    }
}

impl BaselineConfig {
    pub fn validate(&self) -> Result<(), BaselineError> {
        if !(1.0..=2.0).contains(&self.eta) {
            return Err(BaselineError::InvalidConfig(format!("eta {} outside [1, 2]", self.eta)));
        }
        if !(self.tol > 0.0) {
            return Err(BaselineError::InvalidConfig("tol must be positive".into()));
        }
        Ok(())
    }
}

/// Pre-power masses `uᵢ(Au)ᵢ / uᵀAu`, renormalized to sum to one.
fn replicator_masses(g: &Graph, u: &[f64]) -> Result<Vec<f64>, BaselineError> {
    if u.len() != g.n() {
        return Err(BaselineError::DimensionMismatch {
            expected: g.n(),
            got: u.len(),
        });
    }
    let mut au = vec![0.0; u.len()];
    g.adjacency_matvec(u, &mut au);
    let uau: f64 = u.iter().zip(&au).map(|(a, b)| a * b).sum();
    if !(uau > 0.0) {
        return Err(BaselineError::IndependentSupport);
    }
    let mut next: Vec<f64> = u.iter().zip(&au).map(|(&x, &a)| x * a / uau).collect();
    // Drift correction; the masses sum to one exactly in exact arithmetic.
    let total: f64 = next.iter().sum();
    for x in next.iter_mut() {
        *x /= total;
    }
    Ok(next)
}

pub fn pelillo_step(g: &Graph, u: &[f64]) -> Result<Vec<f64>, BaselineError> {
    replicator_masses(g, u)
}

/// Output satisfies `Σ uᵢ^η = 1`. With `eta == 1` this is exactly
/// [`pelillo_step`].
pub fn ding_step(g: &Graph, u: &[f64], eta: f64) -> Result<Vec<f64>, BaselineError> {
    let mut next = replicator_masses(g, u)?;
    if eta != 1.0 {
        let inv = 1.0 / eta;
        for x in next.iter_mut() {
            *x = x.powf(inv);
        }
    }
    Ok(next)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BaselineRun {
    pub u: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub wall_time_ms: f64,
}

/// Iterates from the barycenter (scaled so `Σ uᵢ^η = 1` for Ding) until the
/// squared change drops below `cfg.tol`.
pub fn run_baseline(g: &Graph, kind: BaselineKind, cfg: &BaselineConfig) -> Result<BaselineRun, BaselineError> {
    run_baseline_with(g, kind, cfg, |_| {})
}

/// As [`run_baseline`], calling `observe` on the start and on every iterate.
pub fn run_baseline_with<F: FnMut(&[f64])>(
    g: &Graph,
    kind: BaselineKind,
    cfg: &BaselineConfig,
    mut observe: F,
) -> Result<BaselineRun, BaselineError> {
    cfg.validate()?;
    if g.edge_count() == 0 {
        return Err(BaselineError::NoEdges);
    }
    let started = Instant::now();
    let n = g.n() as f64;
    let start = match kind {
        BaselineKind::Pelillo => 1.0 / n,
        BaselineKind::Ding => n.powf(-1.0 / cfg.eta),
    };
    let mut u = vec![start; g.n()];
    observe(&u);
    let mut iterations = 0;
    let mut converged = false;
    while iterations < cfg.max_iterations {
        let next = match kind {
            BaselineKind::Pelillo => pelillo_step(g, &u)?,
            BaselineKind::Ding => ding_step(g, &u, cfg.eta)?,
        };
        iterations += 1;
        let change: f64 = next.iter().zip(&u).map(|(a, b)| (a - b) * (a - b)).sum();
        u = next;
        observe(&u);
        if change < cfg.tol {
            converged = true;
            break;
        }
    }
    Ok(BaselineRun {
        u,
        iterations,
        converged,
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

/// Vertex order by decreasing weight, ties by ascending index.
pub fn weight_order(u: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..u.len()).collect();
    order.sort_by(|&i, &j| u[j].partial_cmp(&u[i]).unwrap_or(Ordering::Equal).then(i.cmp(&j)));
    order
}

/// Adds vertices in decreasing weight order while the set stays a clique,
/// stopping at the first vertex that is not adjacent to all chosen ones.
pub fn postprocess_greedy(g: &Graph, u: &[f64]) -> CliqueSet {
    let mut chosen: Vec<usize> = Vec::new();
    for v in weight_order(u) {
        if chosen.iter().all(|&c| g.has_edge(c, v)) {
            chosen.push(v);
        } else {
            break;
        }
    }
    chosen.sort_unstable();
    CliqueSet::new_unchecked(chosen)
}

/// Greedily extends `clique` to a maximal one, scanning `order` and skipping
/// vertices that do not fit. Not part of the reference postprocessing.
pub fn extend_to_maximal(g: &Graph, clique: &CliqueSet, order: &[usize]) -> CliqueSet {
    let mut chosen = clique.vertices().to_vec();
    for &v in order {
        if !clique.contains(v) && !chosen.contains(&v) && chosen.iter().all(|&c| g.has_edge(c, v)) {
            chosen.push(v);
        }
    }
    chosen.sort_unstable();
    CliqueSet::new_unchecked(chosen)
}
