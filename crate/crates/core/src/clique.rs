use crate::error::GraphError;
use crate::graph::Graph;

/// A vertex set validated to induce a complete subgraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CliqueSet {
    vertices: Vec<usize>,
}

impl CliqueSet {
    /// Sorts, deduplicates and validates `vertices` against `g`.
    pub fn new(g: &Graph, mut vertices: Vec<usize>) -> Result<Self, GraphError> {
        vertices.sort_unstable();
        vertices.dedup();
        if let Some(&vertex) = vertices.iter().find(|&&v| v >= g.n()) {
            return Err(GraphError::VertexOutOfRange { vertex, n: g.n() });
        }
        for (k, &u) in vertices.iter().enumerate() {
            if let Some(&v) = vertices[k + 1..].iter().find(|&&v| !g.has_edge(u, v)) {
                return Err(GraphError::NotAClique(u, v));
            }
        }
        Ok(Self { vertices })
    }

    /// Caller guarantees `vertices` is sorted, unique and a clique of its graph.
    pub(crate) fn new_unchecked(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Self { vertices }
    }

    /// Clique whose members are the `true` positions of `indicator`.
    pub fn from_indicator(g: &Graph, indicator: &[bool]) -> Result<Self, GraphError> {
        let vertices = indicator
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect();
        Self::new(g, vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// 0/1 indicator vector of length `n`.
    pub fn indicator(&self, n: usize) -> Vec<f64> {
        let mut u = vec![0.0; n];
        for &v in &self.vertices {
            u[v] = 1.0;
        }
        u
    }

    pub fn is_maximal_in(&self, g: &Graph) -> bool {
        g.is_maximal_clique(&self.vertices)
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.vertices
    }
}
