//! The circle method, the matching adversary, and shifting tables.

use std::collections::HashSet;

use crate::constructions::{Construction, VertexSplit};
use crate::error::{Error, Result};
use crate::factor::{Block, FactorShape, Round};
use crate::tournament::Tournament;

/// Complete matching tournament on `n` players: vertex `n-1` stays put while
/// the others rotate around a circle.
pub fn round_robin_circle(n: usize) -> Result<Tournament> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Parity(format!(
            "round robin needs an even number of players, got {n}"
        )));
    }
    let shape = FactorShape::clique(2)?;
    let m = n - 1;
    let mut rounds = Vec::with_capacity(m);
    for r in 0..m {
        let mut pairs = vec![vec![r, m]];
        for i in 1..n / 2 {
            pairs.push(vec![(r + i) % m, (r + m - i) % m]);
        }
        rounds.push(Round::from_vertex_lists(shape, n, pairs)?);
    }
    Tournament::from_rounds(shape, n, rounds)
}

/// `n/2` matchings using every edge between `A = 0..n/2` and `B = n/2..n`:
/// in round `r`, player `n/2 + i` meets player `(i + r) mod n/2`.
///
/// The feasibility graph left behind is two disjoint `K_{n/2}`, which has no
/// perfect matching when `n/2` is odd.
pub fn construct_matching_adversary(n: usize) -> Result<Construction> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Parity(format!(
            "matching tournaments need an even n, got {n}"
        )));
    }
    let h = n / 2;
    if h.is_multiple_of(2) {
        return Err(Error::Parity(format!(
            "n/2 = {h} is even; the tournament would be extendable"
        )));
    }
    let shape = FactorShape::clique(2)?;
    let mut rounds = Vec::with_capacity(h);
    let mut provenance = Vec::with_capacity(h);
    for r in 0..h {
        let pairs = (0..h).map(|i| vec![h + i, (i + r) % h]).collect();
        rounds.push(Round::from_vertex_lists(shape, n, pairs)?);
        provenance.push(format!("round {r}: B_i meets A_(i+{r} mod {h})"));
    }
    Ok(Construction {
        tournament: Tournament::from_rounds(shape, n, rounds)?,
        split: VertexSplit::new(n, (0..h).collect())?,
        provenance,
    })
}

/// `rounds` clique-factors on `vertices` from a `k x (m/k)` table whose row `i`
/// moves `i` columns to the right per round. Column `j` of table `t` is a block.
///
/// Fails with [`Error::EdgeReuse`] at the first round that repeats a pair.
pub fn shifting_tournament(vertices: &[usize], k: usize, rounds: usize) -> Result<Vec<Vec<Block>>> {
    let m = vertices.len();
    if k < 2 || m == 0 || !m.is_multiple_of(k) {
        return Err(Error::Divisibility { n: m, k });
    }
    let cols = m / k;
    let cell = |row: usize, col: usize| vertices[row * cols + col];
    let mut used = HashSet::new();
    let mut out = Vec::with_capacity(rounds);
    for t in 0..rounds {
        let mut blocks = Vec::with_capacity(cols);
        for col in 0..cols {
            let members: Vec<usize> = (0..k)
                .map(|row| cell(row, (col + cols * k - (row * t) % cols) % cols))
                .collect();
            for a in 0..k {
                for b in a + 1..k {
                    let (u, v) = (members[a].min(members[b]), members[a].max(members[b]));
                    if !used.insert((u, v)) {
                        return Err(Error::EdgeReuse { u, v, round: t });
                    }
                }
            }
            blocks.push(Block::clique(members)?);
        }
        out.push(blocks);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::verify_tournament;

    #[test]
    fn circle_method() {
        for n in [2, 4, 6, 8, 12] {
            let t = round_robin_circle(n).unwrap();
            assert_eq!(t.len(), n - 1);
            assert!(verify_tournament(&t).complete);
        }
        assert!(matches!(round_robin_circle(7), Err(Error::Parity(_))));
    }

    #[test]
    fn matching_adversary_structure() {
        let c = construct_matching_adversary(10).unwrap();
        assert_eq!(c.tournament.len(), 5);
        let g = c.tournament.feasibility_graph();
        assert!(g.complement().is_balanced_complete_bipartite());
        assert_eq!(g.components().len(), 2);
        assert!(construct_matching_adversary(8).is_err());
    }

    #[test]
    fn shifting_horizon() {
        let six: Vec<usize> = (0..6).collect();
        assert_eq!(shifting_tournament(&six, 3, 1).unwrap().len(), 1);
        let fifteen: Vec<usize> = (10..25).collect();
        let rounds = shifting_tournament(&fifteen, 3, 4).unwrap();
        assert!(rounds.iter().all(|r| r.len() == 5));
        let twelve: Vec<usize> = (0..12).collect();
        assert!(shifting_tournament(&twelve, 3, 2).is_ok());
        assert!(matches!(
            shifting_tournament(&twelve, 3, 3),
            Err(Error::EdgeReuse { round: 2, .. })
        ));
    }
}
