//! Undirected simple graphs stored as sorted, symmetric adjacency (CSR layout).
//!
//! The modified adjacency matrix `B = A + I` used throughout the solver is
//! never materialized: it is this structure plus an implicit unit diagonal.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GraphError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    /// `offsets[i]..offsets[i + 1]` indexes the neighbors of `i` in `targets`.
    offsets: Vec<usize>,
    targets: Vec<usize>,
    edge_count: usize,
}

impl Graph {
    /// Graph with `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
            edge_count: 0,
        }
    }

    /// Build from an edge list with 0-based endpoints.
    ///
    /// Duplicates, both orientations of an edge and self-loops are accepted
    /// and sanitized. Out-of-range endpoints are rejected.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut lists: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                continue;
            }
            lists[u].push(v);
            lists[v].push(u);
        }
        Ok(Self::from_neighbor_lists(lists))
    }

    /// `lists` must already be symmetric and loop-free; entries are sorted
    /// and deduplicated here.
    pub(crate) fn from_neighbor_lists(mut lists: Vec<Vec<usize>>) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        for list in lists.iter_mut() {
            list.sort_unstable();
            list.dedup();
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        let edge_count = targets.len() / 2;
        Self {
            offsets,
            targets,
            edge_count,
        }
    }

    /// Erdős–Rényi graph: each pair `{i, j}` is an edge independently with
    /// probability `density`. Deterministic in `(n, density, seed)`.
    pub fn random(n: usize, density: f64, seed: u64) -> Result<Self, GraphError> {
        if !(0.0..=1.0).contains(&density) {
            return Err(GraphError::InvalidDensity(density));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut lists: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen_bool(density) {
                    lists[i].push(j);
                    lists[j].push(i);
                }
            }
        }
        Ok(Self::from_neighbor_lists(lists))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Number of ones in `B = A + I`, i.e. `‖B‖²_F = n + 2|E|`.
    #[inline]
    pub fn nnz_b(&self) -> usize {
        self.n() + 2 * self.edge_count
    }

    /// Sorted neighbors of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Undirected edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        n * n.saturating_sub(1) == 2 * self.edge_count
    }

    /// `out = A x`. One pass over the stored adjacency.
    pub fn adjacency_matvec(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.n());
        debug_assert_eq!(out.len(), self.n());
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.neighbors(i).iter().map(|&j| x[j]).sum();
        }
    }

    /// `xᵀ A x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        (0..self.n())
            .map(|i| x[i] * self.neighbors(i).iter().map(|&j| x[j]).sum::<f64>())
            .sum()
    }

    /// True iff every distinct pair in `vertices` is adjacent. Vacuously true
    /// for sets of size 0 or 1. Repeated entries are treated as one vertex.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        for (k, &u) in vertices.iter().enumerate() {
            for &v in &vertices[k + 1..] {
                if u != v && !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff `vertices` is a clique and no outside vertex is adjacent to
    /// all of it.
    pub fn is_maximal_clique(&self, vertices: &[usize]) -> bool {
        if !self.is_clique(vertices) {
            return false;
        }
        self.extension_candidate(vertices).is_none()
    }

    /// Some vertex outside `clique` adjacent to every member, if any.
    pub fn extension_candidate(&self, clique: &[usize]) -> Option<usize> {
        match clique.iter().min_by_key(|&&v| self.degree(v)) {
            // Every vertex extends the empty set.
            None => (0..self.n()).next(),
            Some(&pivot) => self
                .neighbors(pivot)
                .iter()
                .copied()
                .find(|&w| !clique.contains(&w) && clique.iter().all(|&c| self.has_edge(c, w))),
        }
    }
}
