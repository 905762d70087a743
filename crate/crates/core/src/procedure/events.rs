//! The per-round and aggregate success events the faithful mode accepts on.

use super::round::{PendantLedger, RoundTrace};
use super::ProcedureParams;
use crate::colouring::PartialColouring;
use crate::graph::Graph;

/// Round-`i` event for vertex `v`: among the first ⌈d(v)/2⌉ neighbours of
/// `v` in the round-`i` graph (real neighbours by index, then pendant
/// slots in batch order) that were uncoloured after round `i-1`, some `u`
/// was coloured in round `i`, and no other real neighbour of `v` was
/// chosen in round `i`.
///
/// `colouring` may be the in-progress or the final partial colouring: the
/// check only compares recorded colour rounds against `i`, and colours are
/// assigned at most once, so post-hoc evaluation over the final colouring
/// is exact.
pub fn event_a_v_i(
    g: &Graph,
    ledger: &PendantLedger,
    colouring: &PartialColouring,
    trace: &RoundTrace,
    v: usize,
) -> bool {
    let i = trace.round;
    let window = (g.degree(v) + 1) / 2;
    if window == 0 {
        return false;
    }

    // Chosen real neighbours of v this round (both lists sorted).
    let mut chosen_count = 0usize;
    let mut chosen_single = usize::MAX;
    {
        let nbrs = g.neighbours(v);
        let chosen = &trace.chosen_real;
        let (mut a, mut b) = (0, 0);
        while a < nbrs.len() && b < chosen.len() {
            match nbrs[a].cmp(&chosen[b]) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    chosen_count += 1;
                    chosen_single = nbrs[a];
                    a += 1;
                    b += 1;
                }
            }
        }
    }

    let mut taken = 0usize;
    for &u in g.neighbours(v) {
        let colour = colouring.get(u);
        let uncoloured_before = colour.map_or(true, |c| c >= i);
        if !uncoloured_before {
            continue;
        }
        if colour == Some(i) && chosen_count == 1 && chosen_single == u {
            return true;
        }
        taken += 1;
        if taken == window {
            return false;
        }
    }
    // Window extends into v's pendant slots; a pendant hit additionally
    // requires that no real neighbour of v was chosen at all.
    for slot in ledger.slots_at_round(v, i) {
        let uncoloured_before = slot.map_or(true, |r| r >= i);
        if !uncoloured_before {
            continue;
        }
        if *slot == Some(i) && chosen_count == 0 {
            return true;
        }
        taken += 1;
        if taken == window {
            return false;
        }
    }
    false
}

/// Aggregate event: at least `unique_target` (= h') of the m round events
/// hold for `v`. Real-valued comparison, never rounded.
pub fn event_a_v(
    g: &Graph,
    ledger: &PendantLedger,
    colouring: &PartialColouring,
    traces: &[RoundTrace],
    v: usize,
    params: &ProcedureParams,
) -> bool {
    let hits = traces
        .iter()
        .filter(|t| event_a_v_i(g, ledger, colouring, t, v))
        .count();
    hits as f64 >= params.unique_target
}

/// Aggregate event: at most d(v)/2 real neighbours of `v` were coloured
/// across all rounds.
pub fn event_b_v(g: &Graph, traces: &[RoundTrace], v: usize) -> bool {
    let nbrs = g.neighbours(v);
    let mut coloured = 0usize;
    for trace in traces {
        let newly = &trace.newly_coloured_real;
        let (mut a, mut b) = (0, 0);
        while a < nbrs.len() && b < newly.len() {
            match nbrs[a].cmp(&newly[b]) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    coloured += 1;
                    a += 1;
                    b += 1;
                }
            }
        }
    }
    2 * coloured <= g.degree(v)
}
