//! Graph generators for the named test families and two random models.

use super::{Graph, GraphError};
use crate::rng::{self, LANE_GENERATE};
use rand::seq::SliceRandom;
use rand::Rng;

/// How many fresh stub pairings the configuration model tries before
/// giving up on producing a simple graph.
pub const CONFIGURATION_MODEL_RETRY_CAP: usize = 1000;

/// A graph family plus its parameters.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum Family {
    Cycle { n: usize },
    Path { n: usize },
    Complete { n: usize },
    CompleteBipartite { left: usize, right: usize },
    /// Star K_{1,n-1}: vertex 0 is the centre.
    Star { n: usize },
    /// Random d-regular graph via the configuration model.
    RandomRegular { n: usize, degree: usize },
    /// Erdős–Rényi G(n, p).
    Gnp { n: usize, p: f64 },
    /// Latin-square graph on the `order`×`order` cell grid: cells are
    /// adjacent when they share a row, a column, or a symbol in one of
    /// `squares` mutually orthogonal Latin squares of prime order.
    MolsGraph { order: usize, squares: usize },
}

/// Generator request: a family plus the seed driving any random choices.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub seed: u64,
}

/// Generate a graph. Deterministic for a fixed spec.
pub fn generate(spec: &GeneratorSpec) -> Result<Graph, GraphError> {
    match spec.family {
        Family::Cycle { n } => cycle(n),
        Family::Path { n } => path(n),
        Family::Complete { n } => complete(n),
        Family::CompleteBipartite { left, right } => complete_bipartite(left, right),
        Family::Star { n } => star(n),
        Family::RandomRegular { n, degree } => random_regular(n, degree, spec.seed),
        Family::Gnp { n, p } => gnp(n, p, spec.seed),
        Family::MolsGraph { order, squares } => mols_graph(order, squares),
    }
}

fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InfeasibleParameters(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::build(n, &edges)
}

fn path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InfeasibleParameters("path needs n >= 1".into()));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::build(n, &edges)
}

fn complete(n: usize) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::build(n, &edges)
}

fn complete_bipartite(left: usize, right: usize) -> Result<Graph, GraphError> {
    if left == 0 || right == 0 {
        return Err(GraphError::InfeasibleParameters(
            "complete bipartite needs both sides non-empty".into(),
        ));
    }
    let mut edges = Vec::new();
    for u in 0..left {
        for v in 0..right {
            edges.push((u, left + v));
        }
    }
    Graph::build(left + right, &edges)
}

fn star(n: usize) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(GraphError::InfeasibleParameters(format!(
            "star needs n >= 2, got {n}"
        )));
    }
    let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
    Graph::build(n, &edges)
}

/// Configuration model: pair degree stubs uniformly at random, rejecting
/// any pick that would create a loop or a parallel edge. A pairing that
/// runs out of legal picks is discarded and restarted from scratch, up to
/// the retry cap. (Rejecting only complete pairings would almost never
/// terminate: a full pairing is simple with probability roughly
/// exp(-(d-1)/2 - (d-1)²/4).)
fn random_regular(n: usize, degree: usize, seed: u64) -> Result<Graph, GraphError> {
    if degree >= n {
        return Err(GraphError::InfeasibleParameters(format!(
            "regular degree {degree} must be < n = {n}"
        )));
    }
    if n * degree % 2 != 0 {
        return Err(GraphError::InfeasibleParameters(format!(
            "n*d must be even, got n = {n}, d = {degree}"
        )));
    }
    if degree == 0 {
        return Graph::build(n, &[]);
    }
    let mut rng = rng::stream(seed, LANE_GENERATE, 0, 0);
    let stub_pool: Vec<usize> = (0..n)
        .flat_map(|v| std::iter::repeat(v).take(degree))
        .collect();
    for _ in 0..CONFIGURATION_MODEL_RETRY_CAP {
        let mut stubs = stub_pool.clone();
        stubs.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n * degree / 2);
        let mut present = std::collections::HashSet::with_capacity(n * degree / 2);
        let mut dead_end = false;
        while stubs.len() >= 2 {
            let u = stubs.swap_remove(rng.gen_range(0..stubs.len()));
            // Bounded number of re-picks before declaring the pairing stuck.
            let mut found = false;
            for _ in 0..(20 * stubs.len() + 50) {
                let j = rng.gen_range(0..stubs.len());
                let v = stubs[j];
                let key = (u.min(v), u.max(v));
                if u != v && !present.contains(&key) {
                    stubs.swap_remove(j);
                    present.insert(key);
                    edges.push(key);
                    found = true;
                    break;
                }
            }
            if !found {
                dead_end = true;
                break;
            }
        }
        if !dead_end {
            return Graph::build(n, &edges);
        }
    }
    Err(GraphError::RetriesExceeded {
        attempts: CONFIGURATION_MODEL_RETRY_CAP,
    })
}

fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InfeasibleParameters(format!(
            "gnp probability must lie in [0, 1], got {p}"
        )));
    }
    let mut rng = rng::stream(seed, LANE_GENERATE, 0, 0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::build(n, &edges)
}

/// Latin-square graph LS(k+2, q) for prime q: vertices are the q² cells
/// (i, j); two cells are adjacent when they agree in row, in column, or in
/// the entry of one of the k squares L_t(i, j) = (t·i + j) mod q,
/// t = 1..=k. For prime q these squares are pairwise orthogonal, so the
/// graph is (k+2)(q-1)-regular.
fn mols_graph(order: usize, squares: usize) -> Result<Graph, GraphError> {
    if !is_prime(order) {
        return Err(GraphError::InfeasibleParameters(format!(
            "mols graph needs a prime order, got {order}"
        )));
    }
    if squares > order - 1 {
        return Err(GraphError::InfeasibleParameters(format!(
            "at most {} mutually orthogonal squares exist for order {order}",
            order - 1
        )));
    }
    let q = order;
    let cell = |i: usize, j: usize| i * q + j;
    let mut edges = Vec::new();
    // Row and column cliques.
    for i in 0..q {
        for a in 0..q {
            for b in (a + 1)..q {
                edges.push((cell(i, a), cell(i, b)));
                edges.push((cell(a, i), cell(b, i)));
            }
        }
    }
    // One clique per symbol per square.
    for t in 1..=squares {
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); q];
        for i in 0..q {
            for j in 0..q {
                classes[(t * i + j) % q].push(cell(i, j));
            }
        }
        for class in classes {
            for a in 0..class.len() {
                for b in (a + 1)..class.len() {
                    edges.push((class[a], class[b]));
                }
            }
        }
    }
    Graph::build(q * q, &edges)
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(family: Family) -> GeneratorSpec {
        GeneratorSpec { family, seed: 1 }
    }

    #[test]
    fn cycle_five() {
        let g = generate(&spec(Family::Cycle { n: 5 })).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 5);
        let stats = g.degree_stats();
        assert_eq!((stats.min_degree, stats.max_degree), (2, 2));
    }

    #[test]
    fn star_four_is_k13() {
        let g = generate(&spec(Family::Star { n: 4 })).unwrap();
        let stats = g.degree_stats();
        assert_eq!((stats.min_degree, stats.max_degree), (1, 3));
    }

    #[test]
    fn random_regular_degrees() {
        let g = generate(&spec(Family::RandomRegular { n: 200, degree: 20 })).unwrap();
        assert_eq!(g.n(), 200);
        assert_eq!(g.edge_count(), 2000);
        assert!((0..200).all(|v| g.degree(v) == 20));
    }

    #[test]
    fn random_regular_rejects_odd_sum() {
        let err = generate(&spec(Family::RandomRegular { n: 5, degree: 3 })).unwrap_err();
        assert!(matches!(err, GraphError::InfeasibleParameters(_)));
    }

    #[test]
    fn random_regular_is_seed_deterministic() {
        let a = generate(&spec(Family::RandomRegular { n: 40, degree: 5 })).unwrap();
        let b = generate(&spec(Family::RandomRegular { n: 40, degree: 5 })).unwrap();
        assert_eq!(a, b);
        let c = generate(&GeneratorSpec {
            family: Family::RandomRegular { n: 40, degree: 5 },
            seed: 2,
        })
        .unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn gnp_extremes() {
        let empty = generate(&spec(Family::Gnp { n: 6, p: 0.0 })).unwrap();
        assert_eq!(empty.edge_count(), 0);
        let full = generate(&spec(Family::Gnp { n: 6, p: 1.0 })).unwrap();
        assert_eq!(full.edge_count(), 15);
    }

    #[test]
    fn mols_graph_regular_degree() {
        // q = 3, k = 2: 4 parallel classes, degree (k+2)(q-1) = 8 on 9 cells.
        let g = generate(&spec(Family::MolsGraph { order: 3, squares: 2 })).unwrap();
        assert_eq!(g.n(), 9);
        let stats = g.degree_stats();
        assert_eq!((stats.min_degree, stats.max_degree), (8, 8));
        // q = 2, k = 1 collapses to K_4.
        let k4 = generate(&spec(Family::MolsGraph { order: 2, squares: 1 })).unwrap();
        assert_eq!(k4.n(), 4);
        assert_eq!(k4.edge_count(), 6);
    }

    #[test]
    fn mols_graph_rejects_bad_orders() {
        assert!(generate(&spec(Family::MolsGraph { order: 4, squares: 1 })).is_err());
        assert!(generate(&spec(Family::MolsGraph { order: 5, squares: 5 })).is_err());
    }
}
