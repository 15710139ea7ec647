use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{n} vertices cannot be split into blocks of size {k}")]
    Divisibility { n: usize, k: usize },

    #[error("parity condition violated: {0}")]
    Parity(String),

    #[error("edge {{{u}, {v}}} is not present in the graph")]
    MissingEdge { u: usize, v: usize },

    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },

    #[error("scripted round {index} is not a factor of the feasibility graph: {reason}")]
    ScriptedRoundInvalid { index: usize, reason: String },

    #[error("edge {{{u}, {v}}} was already used by an earlier round")]
    RoundConflict { u: usize, v: usize },

    #[error("shifting tournament reuses edge {{{u}, {v}}} in round {round}")]
    EdgeReuse { u: usize, v: usize, round: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("sub-design unavailable: {0}")]
    SubDesignUnavailable(String),

    #[error("wrong factor shape: {0}")]
    WrongShape(String),

    #[error("expected {expected} rounds, found {found}")]
    WrongRoundCount { expected: usize, found: usize },

    #[error("feasibility graph has no Hamiltonian cycle")]
    NoHamiltonianCycle,

    #[error("stuck-state structure mismatch: {0}")]
    StructureMismatch(String),

    #[error("input coloring is not equitable: {0}")]
    NotEquitableInput(String),

    #[error("oracle scale limit exceeded: n = {n}, limit = {limit}")]
    ScaleLimitExceeded { n: usize, limit: usize },

    #[error("invalid block or round: {0}")]
    InvalidRound(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
