//! Tournaments: ordered, pairwise edge-disjoint rounds on `K_n`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{Block, FactorShape, Round, ShapeKind};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tournament {
    shape: FactorShape,
    n: usize,
    rounds: Vec<Round>,
}

impl Tournament {
    pub fn empty(shape: FactorShape, n: usize) -> Result<Self> {
        shape.check_divides(n)?;
        Graph::empty(n)?;
        Ok(Tournament {
            shape,
            n,
            rounds: Vec::new(),
        })
    }

    /// Validates every round and edge-disjointness across rounds.
    pub fn from_rounds(shape: FactorShape, n: usize, rounds: Vec<Round>) -> Result<Self> {
        let mut t = Self::empty(shape, n)?;
        for r in rounds {
            t = t.extend(r)?;
        }
        Ok(t)
    }

    pub fn from_vertex_lists(
        shape: FactorShape,
        n: usize,
        rounds: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let rounds = rounds
            .into_iter()
            .map(|r| Round::from_vertex_lists(shape, n, r))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rounds(shape, n, rounds)
    }

    pub fn shape(&self) -> FactorShape {
        self.shape
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rounds(&self) -> &[Round] {
        &self.rounds
    }

    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    /// `K_n` minus every edge played so far.
    pub fn feasibility_graph(&self) -> Graph {
        let mut g = Graph::complete(self.n).expect("n validated at construction");
        for r in &self.rounds {
            for (u, v) in r.edges() {
                g.clear_edge(u, v);
            }
        }
        g
    }

    /// Appends `round`, rejecting it if any of its edges was already played.
    pub fn extend(&self, round: Round) -> Result<Tournament> {
        if round.n() != self.n || round.shape().k != self.shape.k {
            return Err(Error::InvalidRound(format!(
                "round for n = {}, k = {} does not fit tournament with n = {}, k = {}",
                round.n(),
                round.shape().k,
                self.n,
                self.shape.k
            )));
        }
        let g = self.feasibility_graph();
        for (u, v) in round.edges() {
            if !g.has_edge(u, v) {
                return Err(Error::RoundConflict { u, v });
            }
        }
        let mut rounds = self.rounds.clone();
        rounds.push(round);
        Ok(Tournament {
            shape: self.shape,
            n: self.n,
            rounds,
        })
    }

    /// Drops the last round.
    pub fn truncated(&self, len: usize) -> Tournament {
        Tournament {
            shape: self.shape,
            n: self.n,
            rounds: self.rounds[..len.min(self.rounds.len())].to_vec(),
        }
    }

    pub fn relabel(&self, perm: &[usize]) -> Tournament {
        Tournament {
            shape: self.shape,
            n: self.n,
            rounds: self.rounds.iter().map(|r| r.relabel(perm)).collect(),
        }
    }

    /// Text form: header `shape k n r`, then each round as one block per line,
    /// rounds separated by a blank line.
    pub fn to_text(&self) -> String {
        let kind = match self.shape.kind {
            ShapeKind::Clique => "clique",
            ShapeKind::Cycle => "cycle",
        };
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} {} {} {}",
            kind,
            self.shape.k,
            self.n,
            self.rounds.len()
        );
        for r in &self.rounds {
            s.push('\n');
            s.push_str(&r.to_text());
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Tournament> {
        let (shape, n, rounds) = parse_rounds(text)?;
        Tournament::from_rounds(shape, n, rounds)
    }
}

/// Parses the text form without checking that the rounds are edge-disjoint,
/// so that broken files can still be inspected with
/// [`verify_rounds`](crate::analysis::verify_rounds).
pub fn parse_rounds(text: &str) -> Result<(FactorShape, usize, Vec<Round>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let perr = |msg: String| Error::Parse { line: hl, msg };
    if parts.len() != 4 {
        return Err(perr(format!("expected `shape k n r`, got {header:?}")));
    }
    let kind = match parts[0] {
        "clique" => ShapeKind::Clique,
        "cycle" => ShapeKind::Cycle,
        other => return Err(perr(format!("unknown shape {other:?}"))),
    };
    let nums: Vec<usize> = parts[1..]
        .iter()
        .map(|p| p.parse::<usize>().map_err(|e| perr(e.to_string())))
        .collect::<Result<_>>()?;
    let (k, n, r) = (nums[0], nums[1], nums[2]);
    let shape = FactorShape::new(kind, k).map_err(|e| perr(e.to_string()))?;
    shape.check_divides(n).map_err(|e| perr(e.to_string()))?;
    let per_round = n / k;
    let mut rounds = Vec::with_capacity(r);
    for ri in 0..r {
        let mut blocks = Vec::with_capacity(per_round);
        for _ in 0..per_round {
            let (ln, line) = lines.next().ok_or(Error::Parse {
                line: hl,
                msg: format!("round {} is incomplete", ri + 1),
            })?;
            let vs = line
                .split_whitespace()
                .map(|p| p.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse {
                    line: ln,
                    msg: e.to_string(),
                })?;
            blocks.push(Block::new(kind, vs).map_err(|e| Error::Parse {
                line: ln,
                msg: e.to_string(),
            })?);
        }
        let round = Round::new(shape, n, blocks).map_err(|e| Error::Parse {
            line: hl,
            msg: e.to_string(),
        })?;
        rounds.push(round);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::Parse {
            line: ln,
            msg: "trailing content after last round".into(),
        });
    }
    Ok((shape, n, rounds))
}

/// Free-function form of [`Tournament::feasibility_graph`].
pub fn feasibility_graph(t: &Tournament) -> Graph {
    t.feasibility_graph()
}

/// Free-function form of [`Tournament::extend`].
pub fn extend(t: &Tournament, r: Round) -> Result<Tournament> {
    t.extend(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn feasibility_graph_examples() {
        let s = FactorShape::clique(2).unwrap();
        let empty = Tournament::empty(s, 6).unwrap();
        assert_eq!(empty.feasibility_graph(), Graph::complete(6).unwrap());
        assert_eq!(
            fixtures::figure1_tournament().feasibility_graph(),
            fixtures::figure1_feasibility()
        );
        assert_eq!(
            fixtures::figure2_tournament()
                .feasibility_graph()
                .edge_count(),
            0
        );
    }

    #[test]
    fn extend_examples() {
        let s = FactorShape::clique(2).unwrap();
        let red = fixtures::figure1_rounds()[0].clone();
        let one = Tournament::empty(s, 6)
            .unwrap()
            .extend(red.clone())
            .unwrap();
        assert_eq!(one.len(), 1);
        assert!(matches!(one.extend(red), Err(Error::RoundConflict { .. })));
        let full = fixtures::figure2_tournament();
        let any = Round::from_vertex_lists(s, 6, vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        assert!(matches!(full.extend(any), Err(Error::RoundConflict { .. })));
    }

    #[test]
    fn text_roundtrip() {
        let t = fixtures::figure1_tournament();
        let text = t.to_text();
        assert!(text.starts_with("clique 2 6 3\n"));
        assert_eq!(Tournament::from_text(&text).unwrap(), t);
        assert!(Tournament::from_text("clique 2 6 1\n0 1\n2 3\n").is_err());
        assert!(Tournament::from_text("clique 2 5 0\n").is_err());
    }

    #[test]
    fn cycle_text_uses_canonical_rotation() {
        let s = FactorShape::cycle(4).unwrap();
        let r = Round::from_vertex_lists(s, 4, vec![vec![2, 1, 0, 3]]).unwrap();
        let t = Tournament::empty(s, 4).unwrap().extend(r).unwrap();
        assert_eq!(t.to_text(), "cycle 4 4 1\n\n0 1 2 3\n");
    }
}
