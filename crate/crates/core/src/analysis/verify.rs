//! Independent validity checks for tournaments and raw round lists.

use serde::Serialize;

use crate::error::Result;
use crate::factor::{find_factor, find_factor_with, FactorShape, Round, SearchOptions};
use crate::tournament::Tournament;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub n: usize,
    pub shape: FactorShape,
    pub rounds: usize,
    pub valid: bool,
    /// Every pair of vertices meets exactly once.
    pub complete: bool,
    pub uncovered_pairs: usize,
    pub violations: Vec<String>,
}

pub fn verify_tournament(t: &Tournament) -> ValidityReport {
    verify_rounds(t.shape(), t.n(), t.rounds())
}

/// Re-checks everything from scratch: block sizes and kinds, vertex coverage
/// of each round, and that no pair meets twice.
pub fn verify_rounds(shape: FactorShape, n: usize, rounds: &[Round]) -> ValidityReport {
    let mut violations = Vec::new();
    if n == 0 || !n.is_multiple_of(shape.k) {
        violations.push(format!("{n} is not divisible by {}", shape.k));
    }
    let mut meets = vec![vec![0usize; n]; n];
    for (ri, r) in rounds.iter().enumerate() {
        if r.n() != n || r.shape().k != shape.k {
            violations.push(format!(
                "round {ri}: built for n = {}, k = {}",
                r.n(),
                r.shape().k
            ));
            continue;
        }
        let mut seen = vec![false; n];
        for b in r.blocks() {
            if b.len() != shape.k {
                violations.push(format!("round {ri}: block {b} has size {}", b.len()));
            }
            if b.kind() != shape.kind && !shape.is_triangle() {
                violations.push(format!("round {ri}: block {b} has the wrong kind"));
            }
            for &v in b.vertices() {
                if v >= n {
                    violations.push(format!("round {ri}: vertex {v} out of range"));
                } else if seen[v] {
                    violations.push(format!("round {ri}: vertex {v} covered twice"));
                } else {
                    seen[v] = true;
                }
            }
            for (u, v) in b.edges() {
                if u < n && v < n {
                    meets[u][v] += 1;
                    if meets[u][v] == 2 {
                        violations.push(format!("round {ri}: pair {{{u}, {v}}} meets again"));
                    }
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            violations.push(format!("round {ri}: vertex {v} not covered"));
        }
    }
    let mut uncovered = 0;
    for u in 0..n {
        for v in u + 1..n {
            if meets[u][v] == 0 {
                uncovered += 1;
            }
        }
    }
    let valid = violations.is_empty();
    ValidityReport {
        n,
        shape,
        rounds: rounds.len(),
        valid,
        complete: valid && uncovered == 0,
        uncovered_pairs: uncovered,
        violations,
    }
}

/// A round that can still be played, or `None` if the tournament is stuck.
pub fn check_extendable(t: &Tournament) -> Result<Option<Round>> {
    find_factor(&t.feasibility_graph(), t.shape())
}

pub fn check_extendable_with_budget(t: &Tournament, budget: u64) -> Result<Option<Round>> {
    find_factor_with(
        &t.feasibility_graph(),
        t.shape(),
        SearchOptions::with_budget(budget),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn figure_tournaments() {
        let r2 = verify_tournament(&fixtures::figure2_tournament());
        assert!(r2.valid && r2.complete);
        let r1 = verify_tournament(&fixtures::figure1_tournament());
        assert!(r1.valid && !r1.complete);
        assert_eq!(r1.uncovered_pairs, 6);
    }

    #[test]
    fn duplicated_round_is_invalid() {
        let mut rounds = fixtures::figure1_rounds();
        rounds.push(rounds[0].clone());
        let r = verify_rounds(FactorShape::clique(2).unwrap(), 6, &rounds);
        assert!(!r.valid);
        assert!(!r.complete);
        assert_eq!(r.violations.len(), 3);
    }

    #[test]
    fn extendability() {
        assert!(check_extendable(&fixtures::figure1_tournament())
            .unwrap()
            .is_none());
        let empty = Tournament::empty(FactorShape::clique(2).unwrap(), 6).unwrap();
        assert!(check_extendable(&empty).unwrap().is_some());
    }
}
