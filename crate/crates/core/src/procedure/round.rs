//! One round of the random selection procedure, plus the pendant ledger.

use super::ProcedureParams;
use crate::colouring::PartialColouring;
use crate::graph::Graph;
use crate::rng::{self, LANE_PENDANT, LANE_REAL};
use rand::Rng;

/// Implicit bookkeeping for the degree-1 pendant vertices attached to each
/// original vertex, one batch of ⌈d(v)/2⌉ slots per round from round 2 on.
///
/// Pendants never influence which real vertices are selected, isolated or
/// coloured; only their own coloured-round marks matter, and only to the
/// neighbourhood windows of the per-round events. A disabled ledger skips
/// the simulation entirely.
#[derive(Debug, Clone, PartialEq)]
pub struct PendantLedger {
    enabled: bool,
    /// Highest round whose batch exists; round 1 has none.
    batches: u32,
    batch_size: Vec<usize>,
    /// Per vertex, batch-major: the round each slot was coloured in.
    coloured_round: Vec<Vec<Option<u32>>>,
    coloured_total: Vec<u32>,
}

impl PendantLedger {
    pub fn new(g: &Graph, enabled: bool) -> Self {
        let n = g.n();
        PendantLedger {
            enabled,
            batches: 1,
            batch_size: (0..n).map(|v| (g.degree(v) + 1) / 2).collect(),
            coloured_round: vec![Vec::new(); if enabled { n } else { 0 }],
            coloured_total: vec![0; n],
        }
    }

    pub fn enabled(&self) -> bool {
        self.enabled
    }

    /// Append the batch of fresh uncoloured slots for `round` (>= 2).
    pub fn add_batch(&mut self, round: u32) {
        assert_eq!(round, self.batches + 1, "batches must be added in round order");
        self.batches = round;
        if self.enabled {
            for (v, slots) in self.coloured_round.iter_mut().enumerate() {
                slots.extend(std::iter::repeat(None).take(self.batch_size[v]));
            }
        }
    }

    pub fn batch_size(&self, v: usize) -> usize {
        self.batch_size[v]
    }

    /// Slots of `v` present in the round-`i` graph, in window order.
    pub fn slots_at_round(&self, v: usize, round: u32) -> &[Option<u32>] {
        if !self.enabled {
            return &[];
        }
        let live = self.batch_size[v] * (round.saturating_sub(1) as usize);
        &self.coloured_round[v][..live.min(self.coloured_round[v].len())]
    }

    pub fn coloured_total(&self, v: usize) -> u32 {
        self.coloured_total[v]
    }

    #[cfg(test)]
    pub(crate) fn set_slot_for_tests(&mut self, v: usize, slot: usize, round: u32) {
        self.coloured_round[v][slot] = Some(round);
        self.coloured_total[v] += 1;
    }
}

/// Per-round record: what was chosen, what survived isolation filtering,
/// and what got coloured.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RoundTrace {
    pub round: u32,
    pub chosen_real: Vec<usize>,
    pub isolated_real: Vec<usize>,
    pub newly_coloured_real: Vec<usize>,
    /// Per-vertex count of pendant slots chosen this round (empty when the
    /// ledger is disabled).
    pub pendant_chosen: Vec<u32>,
    /// Per-vertex cumulative count of coloured pendant slots after this
    /// round (empty when the ledger is disabled).
    pub pendant_coloured_total: Vec<u32>,
}

/// Execute round `round` of attempt `restart`.
///
/// Selection order follows the global ordering: real vertices by index,
/// then pendant batches in append order. Real and pendant coins come from
/// separate derived streams, so disabling the ledger never changes the
/// real-vertex outcome.
pub fn run_round(
    g: &Graph,
    ledger: &mut PendantLedger,
    colouring: &mut PartialColouring,
    params: &ProcedureParams,
    restart: u32,
    round: u32,
) -> RoundTrace {
    let n = g.n();
    let p = params.select_prob;

    let mut rng_real = rng::stream(params.seed, u64::from(restart), u64::from(round), LANE_REAL);
    let mut chosen = vec![false; n];
    let mut chosen_real = Vec::new();
    for v in 0..n {
        if rng_real.gen_bool(p) {
            chosen[v] = true;
            chosen_real.push(v);
        }
    }

    let mut isolated_real = Vec::new();
    let mut newly_coloured_real = Vec::new();
    for &v in &chosen_real {
        if g.neighbours(v).iter().any(|&w| chosen[w]) {
            continue;
        }
        isolated_real.push(v);
        if colouring.get(v).is_none() {
            colouring.set(v, round);
            newly_coloured_real.push(v);
        }
    }

    let mut pendant_chosen = Vec::new();
    let mut pendant_coloured_total = Vec::new();
    if ledger.enabled {
        pendant_chosen = vec![0u32; n];
        let mut rng_pendant =
            rng::stream(params.seed, u64::from(restart), u64::from(round), LANE_PENDANT);
        for batch in 2..=round {
            for v in 0..n {
                let base = ledger.batch_size[v] * (batch as usize - 2);
                for s in 0..ledger.batch_size[v] {
                    if rng_pendant.gen_bool(p) {
                        pendant_chosen[v] += 1;
                        let slot = &mut ledger.coloured_round[v][base + s];
                        if !chosen[v] && slot.is_none() {
                            *slot = Some(round);
                            ledger.coloured_total[v] += 1;
                        }
                    }
                }
            }
        }
        pendant_coloured_total = ledger.coloured_total.clone();
    }

    RoundTrace {
        round,
        chosen_real,
        isolated_real,
        newly_coloured_real,
        pendant_chosen,
        pendant_coloured_total,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::procedure::{compute_params, Mode};

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::build(n, &edges).unwrap()
    }

    fn params_for(g: &Graph, seed: u64) -> ProcedureParams {
        let stats = g.degree_stats();
        compute_params(stats.max_degree, stats.min_degree, 1, Mode::Practical, seed).unwrap()
    }

    #[test]
    fn zero_probability_round_is_empty() {
        let g = cycle(5);
        let params = params_for(&g, 1).with_select_prob(0.0);
        let mut ledger = PendantLedger::new(&g, false);
        let mut colouring = PartialColouring::new(5);
        let trace = run_round(&g, &mut ledger, &mut colouring, &params, 0, 1);
        assert!(trace.chosen_real.is_empty());
        assert!(trace.newly_coloured_real.is_empty());
        assert_eq!(colouring.assigned(), 0);
    }

    #[test]
    fn full_probability_round_colours_nothing_adjacent() {
        // p = 1 selects everything; no vertex is isolated in C_5.
        let g = cycle(5);
        let params = params_for(&g, 1).with_select_prob(1.0);
        let mut ledger = PendantLedger::new(&g, false);
        let mut colouring = PartialColouring::new(5);
        let trace = run_round(&g, &mut ledger, &mut colouring, &params, 0, 1);
        assert_eq!(trace.chosen_real.len(), 5);
        assert!(trace.isolated_real.is_empty());
        assert_eq!(colouring.assigned(), 0);
    }

    #[test]
    fn containment_chain_and_colour_once() {
        let g = cycle(6);
        let params = params_for(&g, 7);
        let mut ledger = PendantLedger::new(&g, false);
        let mut colouring = PartialColouring::new(6);
        let mut seen = vec![false; 6];
        for round in 1..=40 {
            if round >= 2 {
                ledger.add_batch(round);
            }
            let trace = run_round(&g, &mut ledger, &mut colouring, &params, 0, round);
            for v in &trace.newly_coloured_real {
                assert!(trace.isolated_real.contains(v));
                assert!(!seen[*v], "vertex {v} coloured twice");
                seen[*v] = true;
            }
            for v in &trace.isolated_real {
                assert!(trace.chosen_real.contains(v));
            }
            let (proper, _) = crate::colouring::is_proper(&g, &colouring);
            assert!(proper);
        }
    }

    #[test]
    fn pendant_tracking_never_changes_real_outcome() {
        let g = cycle(6);
        let params = params_for(&g, 9);
        let mut with = (PendantLedger::new(&g, true), PartialColouring::new(6));
        let mut without = (PendantLedger::new(&g, false), PartialColouring::new(6));
        for round in 1..=30 {
            if round >= 2 {
                with.0.add_batch(round);
                without.0.add_batch(round);
            }
            let t1 = run_round(&g, &mut with.0, &mut with.1, &params, 0, round);
            let t2 = run_round(&g, &mut without.0, &mut without.1, &params, 0, round);
            assert_eq!(t1.chosen_real, t2.chosen_real);
            assert_eq!(t1.newly_coloured_real, t2.newly_coloured_real);
        }
        assert_eq!(with.1, without.1);
    }

    #[test]
    fn ledger_slot_counts_follow_batches() {
        let g = cycle(5); // every vertex contributes 1 slot per batch
        let mut ledger = PendantLedger::new(&g, true);
        assert_eq!(ledger.slots_at_round(0, 1).len(), 0);
        ledger.add_batch(2);
        ledger.add_batch(3);
        assert_eq!(ledger.slots_at_round(0, 2).len(), 1);
        assert_eq!(ledger.slots_at_round(0, 3).len(), 2);
    }
}
