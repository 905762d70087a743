//! Brute-force existence oracle: enumerate every assignment in [k]^n and
//! test it against the colouring definitions directly.
//!
//! The check below is a deliberately naive, allocation-free transcription
//! of the definitions; it shares no code with the backtracking search it
//! serves as an oracle for. Unit tests pin it against the colouring-core
//! verifiers on random instances.

use super::{SolveError, SolveTarget};
use crate::graph::Graph;

/// Hard ceiling on k^n for a single oracle call.
pub const ENUMERATION_GUARD: u128 = 100_000_000;

/// True iff some total colouring of `g` with colours in `1..=k` satisfies
/// `target`. Exhaustive; guarded by [`ENUMERATION_GUARD`].
pub fn enumeration_oracle(g: &Graph, target: SolveTarget, k: usize) -> Result<bool, SolveError> {
    if k == 0 {
        return Ok(g.n() == 0);
    }
    let space = (k as u128)
        .checked_pow(g.n() as u32)
        .ok_or(SolveError::EnumerationGuard { space: u128::MAX })?;
    if space > ENUMERATION_GUARD {
        return Err(SolveError::EnumerationGuard { space });
    }
    let n = g.n();
    let mut digits = vec![1u32; n];
    loop {
        if assignment_satisfies(g, &digits, target) {
            return Ok(true);
        }
        // Odometer increment over [1, k]^n.
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(false);
            }
            if digits[pos] < k as u32 {
                digits[pos] += 1;
                break;
            }
            digits[pos] = 1;
            pos += 1;
        }
    }
}

/// Direct definition check for a total assignment (`colours[v] >= 1`).
pub fn assignment_satisfies(g: &Graph, colours: &[u32], target: SolveTarget) -> bool {
    debug_assert_eq!(colours.len(), g.n());
    for v in 0..g.n() {
        for &w in g.neighbours(v) {
            if w > v && colours[w] == colours[v] {
                return false;
            }
        }
    }
    match target {
        SolveTarget::Proper => true,
        SolveTarget::ConflictFree { h } => (0..g.n()).all(|v| {
            let nbrs = g.neighbours(v);
            let mut unique = 0;
            for &u in nbrs {
                let mult = nbrs.iter().filter(|&&w| colours[w] == colours[u]).count();
                if mult == 1 {
                    unique += 1;
                }
            }
            unique >= h
        }),
        SolveTarget::Odd => (0..g.n()).all(|v| {
            let nbrs = g.neighbours(v);
            nbrs.iter().any(|&u| {
                nbrs.iter().filter(|&&w| colours[w] == colours[u]).count() % 2 == 1
            })
        }),
        SolveTarget::Square => (0..g.n()).all(|v| {
            let nbrs = g.neighbours(v);
            nbrs.iter().enumerate().all(|(i, &u)| {
                nbrs[i + 1..].iter().all(|&w| colours[w] != colours[u])
            })
        }),
    }
}

/// Smallest `k <= k_max` for which the oracle reports existence.
pub fn oracle_chromatic(
    g: &Graph,
    target: SolveTarget,
    k_max: usize,
) -> Result<Option<usize>, SolveError> {
    for k in 1..=k_max {
        if enumeration_oracle(g, target, k)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{verify_h_conflict_free, verify_odd, verify_square, PartialColouring};
    use crate::graph::{generate, Family, GeneratorSpec};
    use rand::Rng;

    fn path3() -> Graph {
        Graph::build(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn p3_conflict_free_thresholds() {
        let g = path3();
        assert!(!enumeration_oracle(&g, SolveTarget::ConflictFree { h: 1 }, 2).unwrap());
        assert!(enumeration_oracle(&g, SolveTarget::ConflictFree { h: 1 }, 3).unwrap());
    }

    #[test]
    fn triangle_is_2_conflict_free_with_3_colours() {
        let g = Graph::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(enumeration_oracle(&g, SolveTarget::ConflictFree { h: 2 }, 3).unwrap());
    }

    #[test]
    fn guard_rejects_large_spaces() {
        let g = Graph::build(12, &[(0, 1)]).unwrap();
        assert!(matches!(
            enumeration_oracle(&g, SolveTarget::Proper, 10),
            Err(SolveError::EnumerationGuard { .. })
        ));
    }

    /// The inline definition check must agree with the colouring-core
    /// verifiers on random total assignments.
    #[test]
    fn inline_check_matches_verifiers() {
        let mut rng = crate::rng::stream(7, 0, 0, 0);
        for round in 0..300 {
            let n = rng.gen_range(2..=6);
            let g = loop {
                let candidate = generate(&GeneratorSpec {
                    family: Family::Gnp { n, p: 0.6 },
                    seed: rng.gen(),
                })
                .unwrap();
                if candidate.degree_stats().min_degree >= 1 {
                    break candidate;
                }
            };
            let slots: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
            let colouring = PartialColouring::from_slots(slots.clone());
            let h = 1 + round % 2;
            let report = verify_h_conflict_free(&g, &colouring, h).unwrap();
            assert_eq!(
                assignment_satisfies(&g, &slots, SolveTarget::ConflictFree { h }),
                report.h_cf_ok
            );
            assert_eq!(
                assignment_satisfies(&g, &slots, SolveTarget::Odd),
                verify_odd(&g, &colouring).unwrap().odd_all_ok
            );
            assert_eq!(
                assignment_satisfies(&g, &slots, SolveTarget::Square),
                verify_square(&g, &colouring)
            );
        }
    }
}
