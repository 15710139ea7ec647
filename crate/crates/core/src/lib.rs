//! Greedy clique- and cycle-factor tournaments on complete graphs.
//!
//! A round of a tournament on `n` players is an `H`-factor of `K_n` with
//! `H = K_k` (social golfer) or `H = C_k` (Oberwolfach); no pair may meet twice.
//! [`greedy::run_greedy`] keeps adding rounds until the feasibility graph has
//! no factor left. The crate also builds the adversarial tournaments that get
//! stuck as early as possible, evaluates the round guarantees, and checks them
//! exhaustively on small instances.

pub mod analysis;
pub mod bitset;
pub mod constructions;
pub mod error;
pub mod factor;
pub mod fixtures;
pub mod graph;
pub mod greedy;
pub mod oracle;
pub mod scalar;
pub mod tournament;

pub use bitset::VertexSet;
pub use error::{Error, Result};
pub use factor::{Block, FactorShape, Round, ShapeKind};
pub use graph::{complete_graph, Graph};
pub use greedy::{run_greedy, GreedyReport, Strategy};
pub use scalar::Scalar;
pub use tournament::Tournament;

/// Exact rational used for approximation ratios.
pub type Rational = num_rational::Rational64;
/// Bound report with exact ratios.
pub type ExactBoundReport = analysis::bounds::BoundReport<Rational>;
/// Bound report with floating-point ratios.
pub type FloatBoundReport = analysis::bounds::BoundReport<f64>;
