//! Exact chromatic-value computation for small graphs.
//!
//! Backtracking over vertices in index order with canonical-palette
//! symmetry breaking (the first vertex of each component gets colour 1 and
//! a new colour may only enter as max-used + 1). Conflict-freeness and
//! oddness are not monotone under extension, so they are checked exactly
//! when a vertex's neighbourhood becomes fully coloured; squareness is
//! monotone and is enforced on every assignment.

mod oracle;

pub use oracle::{assignment_satisfies, enumeration_oracle, oracle_chromatic, ENUMERATION_GUARD};

use crate::colouring::PartialColouring;
use crate::graph::Graph;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph has an isolated vertex ({0}); conflict-free and odd targets are undefined")]
    IsolatedVertex(usize),
    #[error("conflict-free target needs h >= 1")]
    HZero,
    #[error("h = {h} exceeds the minimum degree {min_degree}; no such colouring can exist")]
    HTooLarge { h: usize, min_degree: usize },
    #[error("enumeration space of {space} assignments exceeds the oracle guard")]
    EnumerationGuard { space: u128 },
}

/// What a colouring must satisfy, beyond properness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SolveTarget {
    /// Plain proper colouring (chromatic number).
    Proper,
    /// Every vertex has at least `h` colours appearing exactly once in its
    /// neighbourhood.
    ConflictFree { h: usize },
    /// Every vertex has some colour appearing an odd number of times in
    /// its neighbourhood.
    Odd,
    /// Vertices at distance at most 2 get distinct colours.
    Square,
}

impl SolveTarget {
    pub fn label(&self) -> String {
        match self {
            SolveTarget::Proper => "proper".into(),
            SolveTarget::ConflictFree { h } => format!("pcf_{h}"),
            SolveTarget::Odd => "odd".into(),
            SolveTarget::Square => "square".into(),
        }
    }
}

/// A solve request: target, palette ceiling and optional wall-clock budget.
#[derive(Debug, Clone, Copy)]
pub struct SolveRequest {
    pub target: SolveTarget,
    pub k_max: usize,
    pub time_budget: Option<Duration>,
}

/// Outcome of a fixed-palette existence search.
#[derive(Debug, Clone, PartialEq)]
pub enum FindStatus {
    Found(PartialColouring),
    Infeasible,
    /// The time budget ran out before the search space was exhausted.
    Unknown,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FindOutcome {
    pub status: FindStatus,
    pub nodes_explored: u64,
}

/// Outcome of a chromatic-value search over `k = 1..=k_max`.
#[derive(Debug, Clone, PartialEq)]
pub enum ChromaticOutcome {
    Value {
        value: usize,
        colouring: PartialColouring,
        nodes_explored: u64,
    },
    /// Every `k <= k_max` is infeasible.
    ExceedsKMax { k_max: usize, nodes_explored: u64 },
    /// Budget exhausted: the value is known to lie in
    /// `proven_at_least..=k_max` but the bracket was not closed.
    Unknown {
        proven_at_least: usize,
        k_max: usize,
        nodes_explored: u64,
    },
}

fn validate(g: &Graph, target: SolveTarget) -> Result<(), SolveError> {
    match target {
        SolveTarget::ConflictFree { h } => {
            if h == 0 {
                return Err(SolveError::HZero);
            }
            let stats = g.degree_stats();
            if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
                return Err(SolveError::IsolatedVertex(v));
            }
            if h > stats.min_degree {
                return Err(SolveError::HTooLarge {
                    h,
                    min_degree: stats.min_degree,
                });
            }
        }
        SolveTarget::Odd => {
            if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
                return Err(SolveError::IsolatedVertex(v));
            }
        }
        SolveTarget::Proper | SolveTarget::Square => {}
    }
    Ok(())
}

/// Search for a total colouring of `g` with colours in `1..=k` meeting
/// `target`. Disconnected graphs are solved per component.
pub fn find_colouring(
    g: &Graph,
    target: SolveTarget,
    k: usize,
    time_budget: Option<Duration>,
) -> Result<FindOutcome, SolveError> {
    validate(g, target)?;
    let deadline = time_budget.map(|b| Instant::now() + b);
    find_with_deadline(g, target, k, deadline)
}

fn find_with_deadline(
    g: &Graph,
    target: SolveTarget,
    k: usize,
    deadline: Option<Instant>,
) -> Result<FindOutcome, SolveError> {
    let mut combined = PartialColouring::new(g.n());
    let mut nodes = 0;
    for component in g.components() {
        let (sub, back) = g.induced(&component);
        let mut search = Search::new(&sub, target, k, deadline);
        let result = search.run();
        nodes += search.nodes;
        match result {
            SearchResult::Found => {
                for (local, &original) in back.iter().enumerate() {
                    combined.set(original, search.colour[local]);
                }
            }
            SearchResult::Exhausted => {
                return Ok(FindOutcome {
                    status: FindStatus::Infeasible,
                    nodes_explored: nodes,
                });
            }
            SearchResult::TimedOut => {
                return Ok(FindOutcome {
                    status: FindStatus::Unknown,
                    nodes_explored: nodes,
                });
            }
        }
    }
    debug_assert!(assignment_satisfies(g, combined.as_slots(), target));
    Ok(FindOutcome {
        status: FindStatus::Found(combined),
        nodes_explored: nodes,
    })
}

/// Minimum palette size in `1..=k_max` admitting a `target` colouring,
/// proven by infeasibility at every smaller size.
pub fn chromatic_value(
    g: &Graph,
    target: SolveTarget,
    k_max: usize,
    time_budget: Option<Duration>,
) -> Result<ChromaticOutcome, SolveError> {
    validate(g, target)?;
    let deadline = time_budget.map(|b| Instant::now() + b);
    let mut nodes = 0;
    for k in 1..=k_max {
        let outcome = find_with_deadline(g, target, k, deadline)?;
        nodes += outcome.nodes_explored;
        match outcome.status {
            FindStatus::Found(colouring) => {
                return Ok(ChromaticOutcome::Value {
                    value: k,
                    colouring,
                    nodes_explored: nodes,
                });
            }
            FindStatus::Infeasible => {}
            FindStatus::Unknown => {
                return Ok(ChromaticOutcome::Unknown {
                    proven_at_least: k,
                    k_max,
                    nodes_explored: nodes,
                });
            }
        }
    }
    Ok(ChromaticOutcome::ExceedsKMax {
        k_max,
        nodes_explored: nodes,
    })
}

enum SearchResult {
    Found,
    Exhausted,
    TimedOut,
}

struct Search<'g> {
    g: &'g Graph,
    target: SolveTarget,
    k: usize,
    deadline: Option<Instant>,
    colour: Vec<u32>, // 0 = unassigned
    /// Uncoloured-neighbour counts; a vertex's constraint is checked the
    /// moment this hits zero.
    remaining: Vec<usize>,
    dist2: Vec<Vec<usize>>,
    scratch: Vec<u32>,
    nodes: u64,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, target: SolveTarget, k: usize, deadline: Option<Instant>) -> Self {
        let dist2 = if matches!(target, SolveTarget::Square) {
            (0..g.n()).map(|v| g.distance_two_neighbourhood(v)).collect()
        } else {
            Vec::new()
        };
        Search {
            g,
            target,
            k,
            deadline,
            colour: vec![0; g.n()],
            remaining: (0..g.n()).map(|v| g.degree(v)).collect(),
            dist2,
            scratch: Vec::new(),
            nodes: 0,
        }
    }

    fn run(&mut self) -> SearchResult {
        if let Some(deadline) = self.deadline {
            if Instant::now() >= deadline {
                return SearchResult::TimedOut;
            }
        }
        if self.g.n() == 0 {
            return SearchResult::Found;
        }
        if self.k == 0 {
            return SearchResult::Exhausted;
        }
        self.assign_from(0, 0)
    }

    fn assign_from(&mut self, v: usize, max_used: u32) -> SearchResult {
        if v == self.g.n() {
            return SearchResult::Found;
        }
        let ceiling = (max_used + 1).min(self.k as u32);
        for c in 1..=ceiling {
            self.nodes += 1;
            if self.nodes % 4096 == 0 {
                if let Some(deadline) = self.deadline {
                    if Instant::now() >= deadline {
                        return SearchResult::TimedOut;
                    }
                }
            }
            if !self.colour_allowed(v, c) {
                continue;
            }
            self.colour[v] = c;
            self.decrement_neighbours(v);
            if self.completed_neighbourhoods_ok(v) {
                match self.assign_from(v + 1, max_used.max(c)) {
                    SearchResult::Exhausted => {}
                    SearchResult::Found => return SearchResult::Found,
                    SearchResult::TimedOut => {
                        self.undo(v);
                        return SearchResult::TimedOut;
                    }
                }
            }
            self.undo(v);
        }
        SearchResult::Exhausted
    }

    fn colour_allowed(&self, v: usize, c: u32) -> bool {
        if self.g.neighbours(v).iter().any(|&w| self.colour[w] == c) {
            return false;
        }
        if matches!(self.target, SolveTarget::Square) {
            if self.dist2[v].iter().any(|&w| self.colour[w] == c) {
                return false;
            }
        }
        true
    }

    fn decrement_neighbours(&mut self, v: usize) {
        for i in 0..self.g.neighbours(v).len() {
            let w = self.g.neighbours(v)[i];
            self.remaining[w] -= 1;
        }
    }

    /// Check every neighbourhood that the assignment at `v` just completed.
    fn completed_neighbourhoods_ok(&mut self, v: usize) -> bool {
        for i in 0..self.g.neighbours(v).len() {
            let w = self.g.neighbours(v)[i];
            if self.remaining[w] == 0 && !self.constraint_holds(w) {
                return false;
            }
        }
        true
    }

    /// Revert the assignment at `v`, counters included.
    fn undo(&mut self, v: usize) {
        self.colour[v] = 0;
        for i in 0..self.g.neighbours(v).len() {
            let w = self.g.neighbours(v)[i];
            self.remaining[w] += 1;
        }
    }

    fn constraint_holds(&mut self, w: usize) -> bool {
        match self.target {
            SolveTarget::Proper | SolveTarget::Square => true,
            SolveTarget::ConflictFree { h } => {
                self.scratch.clear();
                self.scratch
                    .extend(self.g.neighbours(w).iter().map(|&u| self.colour[u]));
                self.scratch.sort_unstable();
                let mut unique = 0;
                let mut i = 0;
                while i < self.scratch.len() {
                    let mut j = i + 1;
                    while j < self.scratch.len() && self.scratch[j] == self.scratch[i] {
                        j += 1;
                    }
                    if j - i == 1 {
                        unique += 1;
                    }
                    i = j;
                }
                unique >= h
            }
            SolveTarget::Odd => {
                self.scratch.clear();
                self.scratch
                    .extend(self.g.neighbours(w).iter().map(|&u| self.colour[u]));
                self.scratch.sort_unstable();
                let mut i = 0;
                while i < self.scratch.len() {
                    let mut j = i + 1;
                    while j < self.scratch.len() && self.scratch[j] == self.scratch[i] {
                        j += 1;
                    }
                    if (j - i) % 2 == 1 {
                        return true;
                    }
                    i = j;
                }
                false
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::build(n, &edges).unwrap()
    }

    fn value(g: &Graph, target: SolveTarget) -> usize {
        match chromatic_value(g, target, g.n().max(1), None).unwrap() {
            ChromaticOutcome::Value { value, .. } => value,
            other => panic!("expected a value, got {other:?}"),
        }
    }

    #[test]
    fn c5_conflict_free_needs_five() {
        let g = cycle(5);
        let at4 = find_colouring(&g, SolveTarget::ConflictFree { h: 1 }, 4, None).unwrap();
        assert_eq!(at4.status, FindStatus::Infeasible);
        let at5 = find_colouring(&g, SolveTarget::ConflictFree { h: 1 }, 5, None).unwrap();
        assert!(matches!(at5.status, FindStatus::Found(_)));
    }

    #[test]
    fn named_chromatic_values() {
        let p3 = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(value(&p3, SolveTarget::ConflictFree { h: 1 }), 3);
        assert_eq!(value(&cycle(4), SolveTarget::ConflictFree { h: 1 }), 4);
        let star = Graph::build(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(value(&star, SolveTarget::ConflictFree { h: 1 }), 3);
        let k4 = Graph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(value(&k4, SolveTarget::ConflictFree { h: 1 }), 4);
        assert_eq!(value(&cycle(5), SolveTarget::Odd), 5);
        assert_eq!(value(&cycle(5), SolveTarget::Square), 5);
        assert_eq!(value(&cycle(5), SolveTarget::ConflictFree { h: 2 }), 5);
    }

    #[test]
    fn rejects_h_above_min_degree() {
        let g = cycle(4);
        assert_eq!(
            chromatic_value(&g, SolveTarget::ConflictFree { h: 3 }, 4, None).unwrap_err(),
            SolveError::HTooLarge { h: 3, min_degree: 2 }
        );
    }

    #[test]
    fn disconnected_takes_component_maximum() {
        // Triangle plus an edge: chi = 3 (max of 3 and 2).
        let g = Graph::build(5, &[(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
        assert_eq!(value(&g, SolveTarget::Proper), 3);
        let found = find_colouring(&g, SolveTarget::Proper, 3, None).unwrap();
        match found.status {
            FindStatus::Found(c) => assert!(c.is_total()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn time_budget_yields_unknown() {
        // A 3-regular-ish graph large enough that a zero budget trips the
        // deadline check before the search ends.
        let g = crate::graph::generate(&crate::graph::GeneratorSpec {
            family: crate::graph::Family::RandomRegular { n: 40, degree: 3 },
            seed: 5,
        })
        .unwrap();
        let outcome =
            chromatic_value(&g, SolveTarget::Square, 3, Some(Duration::ZERO)).unwrap();
        assert!(matches!(outcome, ChromaticOutcome::Unknown { .. }));
    }

    #[test]
    fn exceeds_k_max_is_reported() {
        let g = cycle(5);
        let outcome = chromatic_value(&g, SolveTarget::Square, 4, None).unwrap();
        assert!(matches!(outcome, ChromaticOutcome::ExceedsKMax { k_max: 4, .. }));
    }

    #[test]
    fn solver_matches_oracle_on_small_graphs() {
        use crate::graph::{generate, Family, GeneratorSpec};
        for seed in 0..40 {
            let g = generate(&GeneratorSpec {
                family: Family::Gnp { n: 6, p: 0.5 },
                seed,
            })
            .unwrap();
            if g.degree_stats().min_degree == 0 {
                continue;
            }
            for target in [
                SolveTarget::ConflictFree { h: 1 },
                SolveTarget::Odd,
                SolveTarget::Square,
            ] {
                for k in 1..=6 {
                    let solver_exists = matches!(
                        find_colouring(&g, target, k, None).unwrap().status,
                        FindStatus::Found(_)
                    );
                    let oracle_exists = enumeration_oracle(&g, target, k).unwrap();
                    assert_eq!(solver_exists, oracle_exists, "seed {seed} target {target:?} k {k}");
                }
            }
        }
    }
}
