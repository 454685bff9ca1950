use thiserror::Error;

/// Errors raised across the library. Failures of a mathematical check that is
/// expected to fail sometimes (a counterexample to condition (*), a missing
/// extraction parameter) are reported as values, not through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("ideal membership is not decidable over {0}")]
    UnsupportedRing(String),

    #[error("quotient is not representable: {0}")]
    UnsupportedQuotient(String),

    #[error("ring {0} is infinite")]
    InfiniteRing(String),

    #[error("generator {0:?} is not a root of the ambient system")]
    GeneratorsNotInSystem(Vec<i64>),

    #[error("net condition fails: sigma({alpha:?}) * sigma({beta:?}) is not contained in sigma(alpha+beta)")]
    NetViolation { alpha: Vec<i64>, beta: Vec<i64> },

    #[error("the subsystem has roots orthogonal to it in the ambient system ({0} of them)")]
    PerpNonEmpty(usize),

    #[error("roots {0:?} and {1:?} are not orthogonal")]
    NotOrthogonal(Vec<i64>, Vec<i64>),

    #[error("root {0:?} is not in the subsystem")]
    NotInDelta(Vec<i64>),

    #[error("pair ({0:?}, {1:?}) is not admissible")]
    PairNotAdmissible(Vec<i64>, Vec<i64>),

    #[error("reduction check failed: {0}")]
    ReductionMismatch(String),

    #[error("t-decomposition failed: {0}")]
    DecompositionFailure(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("no parameter t makes the target coefficient nonzero")]
    NoWitness,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown preset {0:?}")]
    UnknownPreset(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
