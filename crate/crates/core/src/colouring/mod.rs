//! Partial vertex colourings and verifiers for every colouring notion the
//! crate works with: proper, h-conflict-free, odd and square (2-distance).
//!
//! A colour is any positive integer; vertices may be uncoloured. A vertex
//! "sees" a colour as unique when exactly one of its neighbours carries it.

mod io;

pub use io::{read_colouring, write_colouring};

use crate::graph::Graph;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ColouringError {
    #[error("vertex {0} out of range 0..{1}")]
    VertexOutOfRange(usize, usize),
    #[error("graph has an isolated vertex ({0}); conflict-free and odd colourings are undefined")]
    IsolatedVertex(usize),
    #[error("colouring is not total: vertex {0} is uncoloured")]
    NotTotal(usize),
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

/// Assignment of positive-integer colours to a subset of `0..n`.
///
/// Keeps a colour-multiplicity map so the palette in use is always
/// available without rescanning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialColouring {
    slots: Vec<u32>, // 0 encodes "uncoloured"
    counts: BTreeMap<u32, usize>,
}

impl PartialColouring {
    pub fn new(n: usize) -> Self {
        PartialColouring {
            slots: vec![0; n],
            counts: BTreeMap::new(),
        }
    }

    /// Build from a slot vector where 0 means uncoloured.
    pub fn from_slots(slots: Vec<u32>) -> Self {
        let mut counts = BTreeMap::new();
        for &c in slots.iter().filter(|&&c| c != 0) {
            *counts.entry(c).or_insert(0) += 1;
        }
        PartialColouring { slots, counts }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn get(&self, v: usize) -> Option<u32> {
        match self.slots[v] {
            0 => None,
            c => Some(c),
        }
    }

    /// Assign `colour` (>= 1) to `v`, replacing any previous colour.
    pub fn set(&mut self, v: usize, colour: u32) {
        assert!(colour >= 1, "colours are positive integers");
        self.unset(v);
        self.slots[v] = colour;
        *self.counts.entry(colour).or_insert(0) += 1;
    }

    pub fn unset(&mut self, v: usize) {
        let old = self.slots[v];
        if old != 0 {
            self.slots[v] = 0;
            match self.counts.get_mut(&old) {
                Some(1) => {
                    self.counts.remove(&old);
                }
                Some(k) => *k -= 1,
                None => unreachable!("count map out of sync"),
            }
        }
    }

    pub fn is_total(&self) -> bool {
        self.slots.iter().all(|&c| c != 0)
    }

    pub fn first_uncoloured(&self) -> Option<usize> {
        self.slots.iter().position(|&c| c == 0)
    }

    pub fn assigned(&self) -> usize {
        self.slots.len() - self.slots.iter().filter(|&&c| c == 0).count()
    }

    /// Distinct colours currently in use, ascending.
    pub fn palette(&self) -> impl Iterator<Item = u32> + '_ {
        self.counts.keys().copied()
    }

    pub fn colours_used(&self) -> usize {
        self.counts.len()
    }

    /// Distinct colours in use that are <= `limit`.
    pub fn colours_used_up_to(&self, limit: u32) -> usize {
        self.counts.range(1..=limit).count()
    }

    /// Slot view: 0 encodes "uncoloured".
    pub fn as_slots(&self) -> &[u32] {
        &self.slots
    }
}

/// Result of verifying a colouring against a graph.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct VerificationReport {
    pub proper: bool,
    /// Edges whose endpoints share a colour, lexicographically sorted.
    pub violations: Vec<(usize, usize)>,
    pub total: bool,
    /// Per vertex: number of colours appearing exactly once in its
    /// neighbourhood (uncoloured neighbours contribute nothing).
    pub unique_counts: Vec<usize>,
    /// Per vertex: some colour appears an odd number of times among its
    /// coloured neighbours.
    pub odd_ok: Vec<bool>,
    pub colours_used: usize,
    /// The `h` this report was asked about, when conflict-freeness was.
    pub h: Option<usize>,
    /// proper ∧ total ∧ every vertex has at least `h` unique colours.
    pub h_cf_ok: bool,
    /// proper ∧ total ∧ every vertex sees some colour an odd number of times.
    pub odd_all_ok: bool,
}

/// Properness check; partial colourings allowed. An edge violates only if
/// both endpoints are coloured alike.
pub fn is_proper(g: &Graph, c: &PartialColouring) -> (bool, Vec<(usize, usize)>) {
    let mut violations = Vec::new();
    for (u, v) in g.edges() {
        if let (Some(cu), Some(cv)) = (c.get(u), c.get(v)) {
            if cu == cv {
                violations.push((u, v));
            }
        }
    }
    (violations.is_empty(), violations)
}

/// Number of colours assigned to exactly one neighbour of `v`.
pub fn unique_colour_count(
    g: &Graph,
    c: &PartialColouring,
    v: usize,
) -> Result<usize, ColouringError> {
    if v >= g.n() {
        return Err(ColouringError::VertexOutOfRange(v, g.n()));
    }
    let mut colours: Vec<u32> = g.neighbours(v).iter().filter_map(|&u| c.get(u)).collect();
    colours.sort_unstable();
    Ok(count_singletons(&colours))
}

fn count_singletons(sorted: &[u32]) -> usize {
    let mut unique = 0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        if j - i == 1 {
            unique += 1;
        }
        i = j;
    }
    unique
}

fn check_sizes(g: &Graph, c: &PartialColouring) {
    assert_eq!(
        g.n(),
        c.len(),
        "colouring covers {} slots but the graph has {} vertices",
        c.len(),
        g.n()
    );
}

fn first_isolated(g: &Graph) -> Option<usize> {
    (0..g.n()).find(|&v| g.degree(v) == 0)
}

fn build_report(g: &Graph, c: &PartialColouring, h: Option<usize>) -> VerificationReport {
    let (proper, violations) = is_proper(g, c);
    let total = c.is_total();
    let mut unique_counts = Vec::with_capacity(g.n());
    let mut odd_ok = Vec::with_capacity(g.n());
    let mut scratch: Vec<u32> = Vec::new();
    for v in 0..g.n() {
        scratch.clear();
        scratch.extend(g.neighbours(v).iter().filter_map(|&u| c.get(u)));
        scratch.sort_unstable();
        unique_counts.push(count_singletons(&scratch));
        odd_ok.push(has_odd_multiplicity(&scratch));
    }
    let h_cf_ok = match h {
        Some(h) => proper && total && unique_counts.iter().all(|&u| u >= h),
        None => false,
    };
    let odd_all_ok = proper && total && odd_ok.iter().all(|&b| b);
    VerificationReport {
        proper,
        violations,
        total,
        unique_counts,
        odd_ok,
        colours_used: c.colours_used(),
        h,
        h_cf_ok,
        odd_all_ok,
    }
}

fn has_odd_multiplicity(sorted: &[u32]) -> bool {
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            return true;
        }
        i = j;
    }
    false
}

/// Verify `c` as an h-conflict-free colouring of `g`.
///
/// Partial colourings are accepted (the report then has `h_cf_ok = false`
/// but still carries per-vertex unique counts); isolated vertices are a
/// typed error since the notion is undefined for them.
pub fn verify_h_conflict_free(
    g: &Graph,
    c: &PartialColouring,
    h: usize,
) -> Result<VerificationReport, ColouringError> {
    check_sizes(g, c);
    if let Some(v) = first_isolated(g) {
        return Err(ColouringError::IsolatedVertex(v));
    }
    Ok(build_report(g, c, Some(h)))
}

/// Verify `c` as an odd colouring of `g`. Requires a total colouring.
pub fn verify_odd(g: &Graph, c: &PartialColouring) -> Result<VerificationReport, ColouringError> {
    check_sizes(g, c);
    if let Some(v) = first_isolated(g) {
        return Err(ColouringError::IsolatedVertex(v));
    }
    if let Some(v) = c.first_uncoloured() {
        return Err(ColouringError::NotTotal(v));
    }
    Ok(build_report(g, c, None))
}

/// True iff `c` is a total proper colouring in which any two vertices at
/// distance at most 2 receive distinct colours. Partial colourings are
/// simply not square, so they return false.
pub fn verify_square(g: &Graph, c: &PartialColouring) -> bool {
    check_sizes(g, c);
    if !c.is_total() {
        return false;
    }
    if !is_proper(g, c).0 {
        return false;
    }
    // Distance-2 pairs share a neighbour, so it suffices that every
    // neighbourhood is rainbow.
    let mut scratch: Vec<u32> = Vec::new();
    for v in 0..g.n() {
        scratch.clear();
        scratch.extend(g.neighbours(v).iter().filter_map(|&u| c.get(u)));
        scratch.sort_unstable();
        if scratch.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
    }
    true
}
