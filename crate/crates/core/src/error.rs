use thiserror::Error;

/// Errors surfaced by the library.
///
/// Variants named `*Violation` signal broken internal invariants: a correct
/// implementation never returns them on valid input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("modulus involves a prime other than {p}: {value}")]
    MixedPrime { p: u64, value: String },

    #[error("integrality violation: {0}")]
    IntegralityViolation(String),

    #[error("operator is not a global section: {0}")]
    NotGlobal(String),

    #[error("malformed section: {0}")]
    MalformedSection(String),

    #[error("local data does not vanish at {count} coordinate(s)")]
    NonvanishingLocalData { count: usize },

    #[error("congruence system has no solution: {0}")]
    NoLift(String),

    #[error("correction schedule failed at step {step} (order {order})")]
    ScheduleFailure { step: u32, order: u32 },

    #[error("rank deficiency: expected rank {expected}, found {found}")]
    RankDeficiency { expected: usize, found: usize },

    #[error("infinite cokernel: invariant factor 0 at position {0}")]
    InfiniteCokernel(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
