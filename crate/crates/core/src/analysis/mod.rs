//! Bounds, validity checks, stuck-state characterizations and the procedures
//! that buy one more round.

pub mod bounds;
pub mod characterize;
pub mod coloring;
pub mod repair;
pub mod verify;

pub use bounds::{approx_ratio, guarantee_bound, guarantee_rounds, BoundReport, RatioReport};
pub use characterize::{
    characterize_matching_stuck, check_clique_stuck_characterization, CliqueStuckVerdict,
    MatchingStuckVerdict, Verdict, Witness,
};
pub use coloring::merge_component_colorings;
pub use repair::{extend_via_hamiltonian, hamiltonian_cycle, repair_plus_one};
pub use verify::{
    check_extendable, check_extendable_with_budget, verify_rounds, verify_tournament,
    ValidityReport,
};
