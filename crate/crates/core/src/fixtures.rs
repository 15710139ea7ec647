//! The six-player matching tournaments used throughout the docs and tests.
//!
//! Vertex labels: `0, 1, 2` form the upper triangle and `3, 4, 5` the lower
//! one, so after the three rounds of [`figure1_rounds`] the feasibility graph
//! is the two triangles `{0,1,2}` and `{3,4,5}`.

use crate::factor::{FactorShape, Round};
use crate::graph::Graph;
use crate::tournament::Tournament;

fn matching(pairs: [[usize; 2]; 3]) -> Round {
    let shape = FactorShape::clique(2).expect("k = 2");
    Round::from_vertex_lists(shape, 6, pairs.iter().map(|p| p.to_vec()).collect())
        .expect("valid matching")
}

/// Three rounds after which no perfect matching remains.
pub fn figure1_rounds() -> Vec<Round> {
    vec![
        matching([[0, 3], [1, 4], [2, 5]]),
        matching([[0, 5], [1, 3], [2, 4]]),
        matching([[0, 4], [1, 5], [2, 3]]),
    ]
}

pub fn figure1_tournament() -> Tournament {
    Tournament::from_rounds(FactorShape::clique(2).expect("k = 2"), 6, figure1_rounds())
        .expect("edge-disjoint")
}

/// Two disjoint triangles.
pub fn figure1_feasibility() -> Graph {
    Graph::from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]).expect("valid edges")
}

/// A complete five-round tournament on six players.
pub fn figure2_rounds() -> Vec<Round> {
    vec![
        matching([[0, 1], [3, 4], [2, 5]]),
        matching([[0, 2], [3, 5], [1, 4]]),
        matching([[1, 2], [4, 5], [0, 3]]),
        matching([[0, 4], [1, 5], [2, 3]]),
        matching([[0, 5], [1, 3], [2, 4]]),
    ]
}

pub fn figure2_tournament() -> Tournament {
    Tournament::from_rounds(FactorShape::clique(2).expect("k = 2"), 6, figure2_rounds())
        .expect("edge-disjoint")
}
