use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by every module of the crate.
///
/// Guard and budget variants signal that a search was refused or cut short,
/// never that a partial answer was silently returned.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{context}: expected length {expected}, got {actual}")]
    LengthMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("{kind} index {index} out of range ({limit} available)")]
    IndexOutOfRange {
        kind: &'static str,
        index: usize,
        limit: usize,
    },

    #[error("null space dimension {dim} exceeds the guard {guard}; enumerating 2^{dim} vectors was refused")]
    DimGuardExceeded { dim: usize, guard: usize },

    #[error("matrix has {actual} rows, above the row-subset search guard {guard}")]
    SubsetGuardExceeded { actual: usize, guard: usize },

    #[error("dual space dimension {dim} exceeds the guard {guard}")]
    DualGuardExceeded { dim: usize, guard: usize },

    #[error("{search} exceeded its budget of {budget}")]
    BudgetExceeded { search: &'static str, budget: u64 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid reference matrix: {0}")]
    InvalidReference(String),

    #[error("the code admits no cycle-free representation, so the row-removal criterion does not apply")]
    OutOfHypothesis,

    #[error("no row subset yields a cycle-free representation, yet every witness candidate failed verification; this should be unreachable for well-formed inputs")]
    WitnessExhausted,

    #[error("crossover probability must satisfy 0 < p < 0.5, got {p}")]
    InvalidCrossover { p: f64 },

    #[error("{0}")]
    InvalidInput(String),
}
