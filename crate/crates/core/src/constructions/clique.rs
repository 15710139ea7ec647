//! Clique tournaments stuck after exactly `n/(k(k-1))` rounds.

use crate::constructions::designs::{embed_round, resolvable_design, DEFAULT_DESIGN_BUDGET};
use crate::constructions::{shifting_tournament, Construction, VertexSplit};
use crate::error::{Error, Result};
use crate::factor::{Block, FactorShape, Round};
use crate::tournament::Tournament;

/// `n = j k(k-1)` with `j = 1 mod k`. `A = 0..n/k+1` plays a resolvable
/// `(n/k+1, k, 1)` design, the rest plays a shifting tournament, so no edge
/// between `A` and the rest is ever used. Afterwards `A` is independent in the
/// feasibility graph and too large to be spread over the `n/k` blocks.
pub fn construct_clique_adversary(n: usize, k: usize) -> Result<Construction> {
    if k == 2 {
        return Err(Error::Precondition(
            "k = 2 is the matching case; use construct_matching_adversary".into(),
        ));
    }
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k = {k} < 2")));
    }
    let q = k * (k - 1);
    if n == 0 || !n.is_multiple_of(q) {
        return Err(Error::Precondition(format!(
            "n = {n} is not a multiple of k(k-1) = {q}"
        )));
    }
    let j = n / q;
    if j % k != 1 % k {
        return Err(Error::Precondition(format!(
            "j = n/(k(k-1)) = {j} is not 1 mod {k}"
        )));
    }
    if n * (k - 2) < 2 * k {
        return Err(Error::Precondition(format!(
            "n >= 2k/(k-2) fails for n = {n}, k = {k}"
        )));
    }
    if n < q {
        return Err(Error::Precondition(format!(
            "n >= k^2 - k fails for n = {n}, k = {k}"
        )));
    }
    let shape = FactorShape::clique(k)?;
    let ell = n / k + 1;
    let (design, source) = resolvable_design(ell, k, Some(DEFAULT_DESIGN_BUDGET))?;
    if design.len() != j {
        return Err(Error::SubDesignUnavailable(format!(
            "design on {ell} points has {} rounds, expected {j}",
            design.len()
        )));
    }
    let a: Vec<usize> = (0..ell).collect();
    let b: Vec<usize> = (ell..n).collect();
    let shifted = shifting_tournament(&b, k, j)?;
    let mut rounds = Vec::with_capacity(j);
    let mut provenance = vec![format!(
        "A = 0..{ell}: resolvable ({ell},{k},1) design from {source}"
    )];
    provenance.push(format!(
        "B = {ell}..{n}: shifting table with {} columns",
        b.len() / k
    ));
    for (t, (dr, sr)) in design.rounds().iter().zip(shifted).enumerate() {
        let mut blocks: Vec<Block> = embed_round(dr, &a)
            .into_iter()
            .map(Block::clique)
            .collect::<Result<Vec<_>>>()?;
        blocks.extend(sr);
        rounds.push(Round::new(shape, n, blocks)?);
        provenance.push(format!(
            "round {t}: parallel class {t} on A, shifting table {t} on B"
        ));
    }
    Ok(Construction {
        tournament: Tournament::from_rounds(shape, n, rounds)?,
        split: VertexSplit::new(n, a)?,
        provenance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::check_extendable;

    #[test]
    fn six_players_triangles() {
        let c = construct_clique_adversary(6, 3).unwrap();
        assert_eq!(c.tournament.len(), 1);
        assert!(check_extendable(&c.tournament).unwrap().is_none());
        assert!(c.split.cross_edges_used(&c.tournament).is_empty());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            construct_clique_adversary(8, 2),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            construct_clique_adversary(12, 3),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            construct_clique_adversary(10, 3),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn twelve_players_blocks_of_four() {
        let c = construct_clique_adversary(12, 4).unwrap();
        assert_eq!(c.tournament.len(), 1);
        assert!(check_extendable(&c.tournament).unwrap().is_none());
    }
}
