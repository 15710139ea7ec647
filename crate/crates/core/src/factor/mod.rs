//! Clique- and cycle-factors: the template shape, single blocks, whole rounds,
//! and the exact backtracking search that finds them.

mod search;

pub use search::{
    enumerate_factors, find_factor, find_factor_with, for_each_factor, SearchOptions, SearchStats,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeKind {
    Clique,
    Cycle,
}

/// The template graph `H` whose vertex-disjoint copies make up a round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactorShape {
    pub kind: ShapeKind,
    pub k: usize,
}

impl FactorShape {
    pub fn clique(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!(
                "clique blocks need k >= 2, got {k}"
            )));
        }
        Ok(FactorShape {
            kind: ShapeKind::Clique,
            k,
        })
    }

    pub fn cycle(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidParameter(format!(
                "cycle blocks need k >= 3, got {k}"
            )));
        }
        Ok(FactorShape {
            kind: ShapeKind::Cycle,
            k,
        })
    }

    pub fn new(kind: ShapeKind, k: usize) -> Result<Self> {
        match kind {
            ShapeKind::Clique => Self::clique(k),
            ShapeKind::Cycle => Self::cycle(k),
        }
    }

    /// Edges in one block.
    pub fn edges_per_block(&self) -> usize {
        match self.kind {
            ShapeKind::Clique => self.k * (self.k - 1) / 2,
            ShapeKind::Cycle => self.k,
        }
    }

    /// Degree every vertex loses when a round is played.
    pub fn degree_per_round(&self) -> usize {
        match self.kind {
            ShapeKind::Clique => self.k - 1,
            ShapeKind::Cycle => 2,
        }
    }

    pub fn check_divides(&self, n: usize) -> Result<()> {
        if n == 0 || !n.is_multiple_of(self.k) {
            return Err(Error::Divisibility { n, k: self.k });
        }
        Ok(())
    }

    /// Triangles are both `K_3` and `C_3`.
    pub fn is_triangle(&self) -> bool {
        self.k == 3
    }
}

impl fmt::Display for FactorShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ShapeKind::Clique => write!(f, "clique({})", self.k),
            ShapeKind::Cycle => write!(f, "cycle({})", self.k),
        }
    }
}

/// One copy of `H`. Clique blocks are stored sorted; cycle blocks are stored
/// rotated to start at their smallest vertex and oriented towards the smaller
/// of its two cycle neighbours.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    vertices: Vec<usize>,
    kind: ShapeKind,
}

impl Block {
    pub fn clique(mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.len() < 2 || vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidRound(format!(
                "clique block needs >= 2 distinct vertices: {vertices:?}"
            )));
        }
        Ok(Block {
            kind: ShapeKind::Clique,
            vertices,
        })
    }

    pub fn cycle(vertices: Vec<usize>) -> Result<Self> {
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        if vertices.len() < 3 || sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidRound(format!(
                "cycle block needs >= 3 distinct vertices: {vertices:?}"
            )));
        }
        Ok(Block {
            kind: ShapeKind::Cycle,
            vertices: canonical_cycle(&vertices),
        })
    }

    pub fn new(kind: ShapeKind, vertices: Vec<usize>) -> Result<Self> {
        match kind {
            ShapeKind::Clique => Self::clique(vertices),
            ShapeKind::Cycle => Self::cycle(vertices),
        }
    }

    pub fn kind(&self) -> ShapeKind {
        self.kind
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// Edges induced by this block, each as `(min, max)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let vs = &self.vertices;
        let mut out = Vec::new();
        match self.kind {
            ShapeKind::Clique => {
                for i in 0..vs.len() {
                    for j in i + 1..vs.len() {
                        out.push((vs[i].min(vs[j]), vs[i].max(vs[j])));
                    }
                }
            }
            ShapeKind::Cycle => {
                for i in 0..vs.len() {
                    let (a, b) = (vs[i], vs[(i + 1) % vs.len()]);
                    out.push((a.min(b), a.max(b)));
                }
            }
        }
        out
    }

    pub(crate) fn map_vertices(&self, f: impl Fn(usize) -> usize) -> Block {
        let mapped = self.vertices.iter().map(|&v| f(v)).collect();
        Block::new(self.kind, mapped).expect("relabelling preserves distinctness")
    }
}

fn canonical_cycle(seq: &[usize]) -> Vec<usize> {
    let k = seq.len();
    let start = (0..k).min_by_key(|&i| seq[i]).unwrap_or(0);
    let fwd = seq[(start + 1) % k];
    let bwd = seq[(start + k - 1) % k];
    if fwd <= bwd {
        (0..k).map(|i| seq[(start + i) % k]).collect()
    } else {
        (0..k).map(|i| seq[(start + k - i) % k]).collect()
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// An `H`-factor of `K_n`: `n / k` vertex-disjoint blocks covering every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Round {
    shape: FactorShape,
    n: usize,
    blocks: Vec<Block>,
}

impl Round {
    pub fn new(shape: FactorShape, n: usize, mut blocks: Vec<Block>) -> Result<Self> {
        shape.check_divides(n)?;
        if blocks.len() != n / shape.k {
            return Err(Error::InvalidRound(format!(
                "expected {} blocks, got {}",
                n / shape.k,
                blocks.len()
            )));
        }
        let mut seen = VertexSet::empty();
        for b in &blocks {
            if b.kind != shape.kind && !(shape.is_triangle() && b.len() == 3) {
                return Err(Error::InvalidRound(format!("block {b} has the wrong kind")));
            }
            if b.len() != shape.k {
                return Err(Error::InvalidRound(format!(
                    "block {b} has size {} != {}",
                    b.len(),
                    shape.k
                )));
            }
            for &v in b.vertices() {
                if v >= n {
                    return Err(Error::InvalidRound(format!(
                        "vertex {v} out of range for n = {n}"
                    )));
                }
                if seen.contains(v) {
                    return Err(Error::InvalidRound(format!("vertex {v} appears twice")));
                }
                seen.insert(v);
            }
        }
        blocks.sort();
        Ok(Round { shape, n, blocks })
    }

    /// Builds a round from raw vertex lists (sorted sets or cyclic sequences).
    pub fn from_vertex_lists(shape: FactorShape, n: usize, lists: Vec<Vec<usize>>) -> Result<Self> {
        let blocks = lists
            .into_iter()
            .map(|l| Block::new(shape.kind, l))
            .collect::<Result<Vec<_>>>()?;
        Round::new(shape, n, blocks)
    }

    pub fn shape(&self) -> FactorShape {
        self.shape
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.blocks.iter().flat_map(Block::edges).collect()
    }

    /// Index of the block holding `v`.
    pub fn block_of(&self, v: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(v))
    }

    pub fn relabel(&self, perm: &[usize]) -> Round {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.map_vertices(|v| perm[v]))
            .collect();
        Round::new(self.shape, self.n, blocks).expect("relabelling preserves a valid round")
    }

    /// One line per block, vertices separated by spaces.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for b in &self.blocks {
            s.push_str(&b.to_string());
            s.push('\n');
        }
        s
    }

    pub fn as_lists(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.vertices.clone()).collect()
    }
}

impl Serialize for Block {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.vertices.serialize(s)
    }
}

impl Serialize for Round {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_bounds() {
        assert!(FactorShape::clique(1).is_err());
        assert!(FactorShape::clique(2).is_ok());
        assert!(FactorShape::cycle(2).is_err());
        assert_eq!(FactorShape::cycle(5).unwrap().edges_per_block(), 5);
        assert_eq!(FactorShape::clique(4).unwrap().edges_per_block(), 6);
    }

    #[test]
    fn cycle_canonical_form_is_rotation_and_reflection_invariant() {
        let a = Block::cycle(vec![3, 1, 4, 2]).unwrap();
        let b = Block::cycle(vec![2, 4, 1, 3]).unwrap();
        let c = Block::cycle(vec![1, 3, 2, 4]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.vertices(), &[1, 3, 2, 4]);
        assert_eq!(a, c);
        assert_ne!(a, Block::cycle(vec![1, 2, 3, 4]).unwrap());
    }

    #[test]
    fn round_rejects_overlap_and_gaps() {
        let s = FactorShape::clique(2).unwrap();
        assert!(Round::from_vertex_lists(s, 4, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Round::from_vertex_lists(s, 4, vec![vec![0, 1]]).is_err());
        assert!(Round::from_vertex_lists(s, 4, vec![vec![0, 1], vec![2, 4]]).is_err());
        assert!(Round::from_vertex_lists(s, 5, vec![vec![0, 1], vec![2, 3]]).is_err());
        let r = Round::from_vertex_lists(s, 4, vec![vec![3, 2], vec![1, 0]]).unwrap();
        assert_eq!(r.to_text(), "0 1\n2 3\n");
    }

    #[test]
    fn cycle_block_edges() {
        let b = Block::cycle(vec![0, 1, 2, 3]).unwrap();
        assert_eq!(b.edges(), vec![(0, 1), (1, 2), (2, 3), (0, 3)]);
    }
}
