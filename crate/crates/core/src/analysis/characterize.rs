//! Stuck-state characterizations at the critical round count.
//!
//! Matchings: after `n/2` rounds the tournament is stuck iff the complement of
//! the feasibility graph is `K_{n/2,n/2}` and `n/2` is odd.
//!
//! Cliques (`k >= 3`): after `floor(n/(k(k-1)))` rounds, a `K_{n/k+1}` in the
//! complement forces a stuck state. The converse is conditional on the
//! equitable Delta-coloring conjecture; a stuck state without such a clique
//! would be a counterexample to it and is flagged instead of treated as a bug.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{find_factor, Round, ShapeKind};
use crate::tournament::Tournament;

/// Uniform verdict record shared by the characterization checks and the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub claim: String,
    pub paper_ref: String,
    /// Set when the claim relies on an unproven conjecture.
    pub conditional: bool,
    pub witness: Witness,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// A round that extends the tournament.
    Extension(Round),
    /// Sides of the complete bipartite complement.
    Bipartition {
        a: Vec<usize>,
        b: Vec<usize>,
    },
    /// Vertices of a large clique in the complement.
    Clique(Vec<usize>),
    Tournament(Tournament),
    Rounds {
        played: usize,
        guarantee: usize,
    },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingStuckVerdict {
    pub n: usize,
    pub is_stuck: bool,
    pub complement_is_knn: bool,
    pub n_half_odd: bool,
    /// `is_stuck == (complement_is_knn && n_half_odd)`.
    pub biconditional: bool,
    pub extension: Option<Round>,
    pub bipartition: Option<(Vec<usize>, Vec<usize>)>,
}

impl MatchingStuckVerdict {
    pub fn verdict(&self) -> Verdict {
        let witness = match (&self.extension, &self.bipartition) {
            (Some(r), _) => Witness::Extension(r.clone()),
            (None, Some((a, b))) => Witness::Bipartition {
                a: a.clone(),
                b: b.clone(),
            },
            (None, None) => Witness::None,
        };
        Verdict {
            claim: format!(
                "n = {}: stuck after n/2 rounds iff the complement is K_(n/2,n/2) and n/2 is odd",
                self.n
            ),
            paper_ref: "matching stuck-state characterization".into(),
            conditional: false,
            witness,
            holds: self.biconditional,
        }
    }
}

pub fn characterize_matching_stuck(t: &Tournament) -> Result<MatchingStuckVerdict> {
    let shape = t.shape();
    if shape.kind != ShapeKind::Clique || shape.k != 2 {
        return Err(Error::WrongShape(format!(
            "expected clique(2), got {shape}"
        )));
    }
    let n = t.n();
    if t.len() != n / 2 {
        return Err(Error::WrongRoundCount {
            expected: n / 2,
            found: t.len(),
        });
    }
    let g = t.feasibility_graph();
    let extension = find_factor(&g, shape)?;
    let complement = g.complement();
    let complement_is_knn = complement.is_balanced_complete_bipartite();
    let bipartition = complement_is_knn
        .then(|| complement.bipartition())
        .flatten()
        .map(|(a, b)| (a.iter().collect(), b.iter().collect()));
    let is_stuck = extension.is_none();
    let n_half_odd = (n / 2) % 2 == 1;
    Ok(MatchingStuckVerdict {
        n,
        is_stuck,
        complement_is_knn,
        n_half_odd,
        biconditional: is_stuck == (complement_is_knn && n_half_odd),
        extension,
        bipartition,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueStuckVerdict {
    pub n: usize,
    pub k: usize,
    pub is_stuck: bool,
    pub has_big_clique: bool,
    pub big_clique: Option<Vec<usize>>,
    /// Stuck without a `K_{n/k+1}` in the complement.
    pub counterexample_candidate: bool,
    /// A `K_{n/k+1}` in the complement but still extendable. Impossible by
    /// counting; seeing it means a bug.
    pub unconditional_violation: bool,
    pub extension: Option<Round>,
}

impl CliqueStuckVerdict {
    pub fn holds(&self) -> bool {
        self.is_stuck == self.has_big_clique
    }

    pub fn verdict(&self) -> Verdict {
        let witness = match (&self.extension, &self.big_clique) {
            (Some(r), _) => Witness::Extension(r.clone()),
            (None, Some(c)) => Witness::Clique(c.clone()),
            (None, None) => Witness::None,
        };
        Verdict {
            claim: format!(
                "n = {}, k = {}: stuck after floor(n/(k(k-1))) rounds iff the complement contains K_{}",
                self.n,
                self.k,
                self.n / self.k + 1
            ),
            paper_ref: "clique stuck-state characterization".into(),
            conditional: true,
            witness,
            holds: self.holds(),
        }
    }
}

pub fn check_clique_stuck_characterization(t: &Tournament) -> Result<CliqueStuckVerdict> {
    let shape = t.shape();
    let (n, k) = (t.n(), shape.k);
    if k < 3 || (shape.kind != ShapeKind::Clique && !shape.is_triangle()) {
        return Err(Error::WrongShape(format!(
            "expected clique(k) with k >= 3, got {shape}"
        )));
    }
    let expected = n / (k * (k - 1));
    if t.len() != expected {
        return Err(Error::WrongRoundCount {
            expected,
            found: t.len(),
        });
    }
    let g = t.feasibility_graph();
    let extension = find_factor(&g, shape)?;
    let big_clique = g
        .complement()
        .find_clique(n / k + 1)
        .map(|c| c.iter().collect::<Vec<_>>());
    let is_stuck = extension.is_none();
    let has_big_clique = big_clique.is_some();
    Ok(CliqueStuckVerdict {
        n,
        k,
        is_stuck,
        has_big_clique,
        big_clique,
        counterexample_candidate: is_stuck && !has_big_clique,
        unconditional_violation: !is_stuck && has_big_clique,
        extension,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::FactorShape;
    use crate::fixtures;

    #[test]
    fn figure1_is_stuck_with_k33() {
        let v = characterize_matching_stuck(&fixtures::figure1_tournament()).unwrap();
        assert!(v.is_stuck && v.complement_is_knn && v.n_half_odd && v.biconditional);
        assert!(v.verdict().holds);
        assert!(!v.verdict().conditional);
    }

    #[test]
    fn wrong_inputs() {
        let t = fixtures::figure2_tournament();
        assert!(matches!(
            characterize_matching_stuck(&t),
            Err(Error::WrongRoundCount { .. })
        ));
        let tri = Tournament::empty(FactorShape::clique(3).unwrap(), 6).unwrap();
        assert!(matches!(
            characterize_matching_stuck(&tri),
            Err(Error::WrongShape(_))
        ));
        let m = Tournament::empty(FactorShape::clique(2).unwrap(), 6).unwrap();
        assert!(matches!(
            check_clique_stuck_characterization(&m),
            Err(Error::WrongShape(_))
        ));
    }

    #[test]
    fn one_triangle_round_on_six() {
        let shape = FactorShape::clique(3).unwrap();
        let t = Tournament::from_vertex_lists(shape, 6, vec![vec![vec![0, 1, 2], vec![3, 4, 5]]])
            .unwrap();
        let v = check_clique_stuck_characterization(&t).unwrap();
        assert!(v.is_stuck && v.has_big_clique && v.holds());
        assert!(v.verdict().conditional);
    }

    #[test]
    fn verdict_serializes() {
        let v = characterize_matching_stuck(&fixtures::figure1_tournament())
            .unwrap()
            .verdict();
        assert_eq!(
            v.witness,
            Witness::Bipartition {
                a: vec![0, 1, 2],
                b: vec![3, 4, 5]
            }
        );
    }
}
