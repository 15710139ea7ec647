//! Builders for complete tournaments, adversarial tournaments that get stuck
//! early, and the sub-designs they are assembled from.

mod basic;
mod clique;
mod cycle;
pub mod designs;

pub use basic::{construct_matching_adversary, round_robin_circle, shifting_tournament};
pub use clique::construct_clique_adversary;
pub use cycle::{
    base_round_cycles, construct_cycle_adversary_mod2, construct_cycle_adversary_mod2_with,
    construct_cycle_adversary_mod4, construct_cycle_adversary_odd, first_extension_cycle,
};
pub use designs::{oberwolfach_solution_search, resolvable_design_search, DesignSource};

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::tournament::Tournament;

/// Partition of `0..n` into the two sides a construction treats differently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexSplit {
    pub set_a: Vec<usize>,
    pub set_b: Vec<usize>,
}

impl VertexSplit {
    pub fn new(n: usize, mut set_a: Vec<usize>) -> Result<Self> {
        set_a.sort_unstable();
        set_a.dedup();
        if set_a.iter().any(|&v| v >= n) {
            return Err(Error::InvalidParameter(format!(
                "split side exceeds 0..{n}"
            )));
        }
        let a: VertexSet = set_a.iter().copied().collect();
        let set_b = (0..n).filter(|v| !a.contains(*v)).collect();
        Ok(VertexSplit { set_a, set_b })
    }

    pub fn a(&self) -> VertexSet {
        self.set_a.iter().copied().collect()
    }

    pub fn b(&self) -> VertexSet {
        self.set_b.iter().copied().collect()
    }

    /// Edges of `t` with one end in each side.
    pub fn cross_edges_used(&self, t: &Tournament) -> Vec<(usize, usize)> {
        let a = self.a();
        t.rounds()
            .iter()
            .flat_map(|r| r.edges())
            .filter(|&(u, v)| a.contains(u) != a.contains(v))
            .collect()
    }
}

/// A built tournament with the split it was built around and one line of
/// provenance per round (plus the sub-design sources).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub tournament: Tournament,
    pub split: VertexSplit,
    pub provenance: Vec<String>,
}
