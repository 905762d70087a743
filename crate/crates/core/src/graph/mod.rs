//! Simple undirected graphs with a fixed linear vertex ordering.
//!
//! Vertices are `0..n`, and that index order *is* the linear ordering used
//! everywhere else in the crate (solver branching, round procedures, greedy
//! completion). Adjacency lists are kept sorted and symmetric.

mod generate;
mod io;

pub use generate::{generate, Family, GeneratorSpec};
pub use io::{read_graph, write_graph, GraphFormat};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    EndpointOutOfRange(usize, usize, usize),
    #[error("infeasible generator parameters: {0}")]
    InfeasibleParameters(String),
    #[error("configuration model failed to produce a simple graph after {attempts} attempts")]
    RetriesExceeded { attempts: usize },
    #[error("{path}:{line}: {reason}")]
    Parse {
        path: String,
        line: usize,
        reason: String,
    },
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Immutable simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

/// Minimum/maximum degree summary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct DegreeStats {
    pub min_degree: usize,
    pub max_degree: usize,
    pub has_isolated: bool,
}

impl Graph {
    /// Build a graph on `n` vertices from an edge list.
    ///
    /// Duplicate edges (in either orientation) collapse to one; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Graph {
            adj,
            edge_count: edge_count / 2,
        })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbours of `v`, strictly increasing.
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let mut min_degree = usize::MAX;
        let mut max_degree = 0;
        for list in &self.adj {
            min_degree = min_degree.min(list.len());
            max_degree = max_degree.max(list.len());
        }
        if self.adj.is_empty() {
            min_degree = 0;
        }
        DegreeStats {
            min_degree,
            max_degree,
            has_isolated: !self.adj.is_empty() && min_degree == 0,
        }
    }

    /// Connected components, each a sorted vertex list; components ordered
    /// by their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push(start);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop() {
                comp.push(v);
                for &w in self.neighbours(v) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Subgraph induced by `vertices` (must be sorted and distinct).
    /// Returns the subgraph plus the map from new index to old vertex.
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut new_index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            new_index[v] = i;
        }
        let mut edges = Vec::new();
        for &v in vertices {
            for &w in self.neighbours(v) {
                if w > v && new_index[w] != usize::MAX {
                    edges.push((new_index[v], new_index[w]));
                }
            }
        }
        let g = Graph::build(vertices.len(), &edges).expect("induced subgraph edges are valid");
        (g, vertices.to_vec())
    }

    /// Vertices at distance exactly 1 or 2 from `v`, sorted, excluding `v`.
    pub fn distance_two_neighbourhood(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.neighbours(v).to_vec();
        for &u in self.neighbours(v) {
            for &w in self.neighbours(u) {
                if w != v {
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}
