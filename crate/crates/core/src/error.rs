use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid block crossing ({a},{b},{c}) for length {k}")]
    InvalidCrossing { a: usize, b: usize, c: usize, k: usize },

    #[error("solution has {got} crossing sequences, instance has {expected} meetings")]
    WrongBlockCount { expected: usize, got: usize },

    #[error("meeting {index} is not supported")]
    UnsupportedMeeting { index: usize },

    #[error("no solution within budget of {budget} crossings")]
    BudgetExhausted { budget: usize },

    #[error("state space of {states} states exceeds the budget of {limit}")]
    StateLimit { states: u128, limit: u128 },

    #[error("{what} is limited to {limit}, got {got}")]
    Guard { what: &'static str, limit: usize, got: usize },

    #[error("meeting size must be {expected}, got {got}")]
    MeetingSize { expected: usize, got: usize },

    #[error("hypergraph rank {rank} exceeds {limit}")]
    Rank { rank: usize, limit: usize },

    #[error("block move requested before any meeting was checked")]
    NoTrackedMeeting,

    #[error("internal contract violated: {0}")]
    Contract(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
