use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("arc multiplicity: arc {arc} appears {count} times")]
    ArcMultiplicity { arc: i64, count: usize },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("partial state: expected {expected} crossings, got {got}")]
    PartialState { expected: usize, got: usize },

    #[error("resource limit: {crossings} crossings exceeds the state-sum limit of {limit}")]
    ResourceLimit { crossings: usize, limit: usize },

    #[error("diagram is not adequate")]
    NotAdequate,

    #[error("zero polynomial has no extreme powers")]
    ZeroPolynomial,

    #[error("singular continued fraction")]
    SingularContinuedFraction,

    #[error("invalid continued fraction: {0}")]
    InvalidContinuedFraction(String),

    #[error("block grammar: {0}")]
    Grammar(String),

    #[error("shape not covered by the extreme-power formula: {0}")]
    UnsupportedShape(String),

    #[error("block does not extend crossing {crossing} (sign {sign})")]
    NotExtending { crossing: usize, sign: i8 },

    #[error("no orientation extends: {0}")]
    NoOrientationExtends(String),

    #[error("unknown crossing {0}")]
    UnknownCrossing(usize),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("root-of-unity evaluation is {0} away from an integer")]
    RoundingTolerance(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
