//! Exact answers on small graphs: maximal clique enumeration, maximum clique
//! and the Motzkin–Straus optimal value `1 − 1/ω(G)`.
//!
//! Bron–Kerbosch with Tomita pivoting over a dense adjacency matrix. Only
//! meant for desk-scale instances; sizes are capped by [`OracleLimits`].

use crate::clique::CliqueSet;
use crate::error::OracleError;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_vertices: usize,
    pub max_reported_cliques: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_vertices: 64,
            max_reported_cliques: 1_000_000,
        }
    }
}

struct Dense {
    adj: Vec<Vec<bool>>,
}

impl Dense {
    fn new(g: &Graph, limits: &OracleLimits) -> Result<Self, OracleError> {
        if g.n() > limits.max_vertices {
            return Err(OracleError::TooManyVertices {
                n: g.n(),
                limit: limits.max_vertices,
            });
        }
        let mut adj = vec![vec![false; g.n()]; g.n()];
        for (u, v) in g.edges() {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Ok(Self { adj })
    }

    fn pivot(&self, p: &[usize], x: &[usize]) -> usize {
        // maximize |P ∩ N(pivot)|
        *p.iter()
            .chain(x)
            .max_by_key(|&&w| p.iter().filter(|&&v| self.adj[w][v]).count())
            .expect("pivot requested with P ∪ X empty")
    }

    fn enumerate(
        &self,
        r: &mut Vec<usize>,
        mut p: Vec<usize>,
        mut x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> Result<(), OracleError> {
        if p.is_empty() {
            if x.is_empty() {
                if out.len() >= limit {
                    return Err(OracleError::TooManyCliques { limit });
                }
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
            }
            return Ok(());
        }
        let pivot = self.pivot(&p, &x);
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| !self.adj[pivot][v]).collect();
        for v in candidates {
            let np = p.iter().copied().filter(|&w| self.adj[v][w]).collect();
            let nx = x.iter().copied().filter(|&w| self.adj[v][w]).collect();
            r.push(v);
            self.enumerate(r, np, nx, out, limit)?;
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
        Ok(())
    }

    /// Best is the largest clique; ties go to the lexicographically smallest
    /// sorted vertex list.
    fn search_maximum(&self, r: &mut Vec<usize>, mut p: Vec<usize>, best: &mut Vec<usize>) {
        if r.len() + p.len() < best.len() {
            return;
        }
        if p.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            if c.len() > best.len() || (c.len() == best.len() && c < *best) {
                *best = c;
            }
            return;
        }
        // Ascending branching order; no pivoting so every maximal clique with
        // a chance of winning a tie is reached.
        while let Some(&v) = p.first() {
            if r.len() + p.len() < best.len() {
                return;
            }
            let np = p.iter().copied().filter(|&w| self.adj[v][w]).collect();
            r.push(v);
            self.search_maximum(r, np, best);
            r.pop();
            p.remove(0);
        }
    }
}

/// Every maximal clique exactly once, sorted lexicographically.
pub fn enumerate_maximal_cliques(g: &Graph, limits: &OracleLimits) -> Result<Vec<CliqueSet>, OracleError> {
    let dense = Dense::new(g, limits)?;
    let mut out = Vec::new();
    if g.n() > 0 {
        dense.enumerate(
            &mut Vec::new(),
            (0..g.n()).collect(),
            Vec::new(),
            &mut out,
            limits.max_reported_cliques,
        )?;
    }
    out.sort();
    Ok(out.into_iter().map(CliqueSet::new_unchecked).collect())
}

/// A maximum clique; ties broken lexicographically. Empty only when `n = 0`.
pub fn maximum_clique_exact(g: &Graph, limits: &OracleLimits) -> Result<CliqueSet, OracleError> {
    let dense = Dense::new(g, limits)?;
    let mut best = Vec::new();
    dense.search_maximum(&mut Vec::new(), (0..g.n()).collect(), &mut best);
    Ok(CliqueSet::new_unchecked(best))
}

pub fn clique_number(g: &Graph, limits: &OracleLimits) -> Result<usize, OracleError> {
    maximum_clique_exact(g, limits).map(|c| c.size())
}

/// `max { uᵀAu : u ∈ Δ } = 1 − 1/ω(G)`.
pub fn motzkin_straus_value(g: &Graph, limits: &OracleLimits) -> Result<f64, OracleError> {
    if g.n() == 0 {
        return Err(OracleError::NoVertices);
    }
    let omega = clique_number(g, limits)?;
    Ok(1.0 - 1.0 / omega as f64)
}
