use thiserror::Error;

/// Errors raised by the estimators, samplers and the benchmark engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty sample")]
    EmptySample,
    #[error("counts must be positive integers (found 0 at position {0})")]
    ZeroCount(usize),
    #[error("step distribution requires an even support size, got {0}")]
    OddStepSupport(usize),
    #[error("support size must be at least {min}, got {got}")]
    SupportTooSmall { min: usize, got: usize },
    #[error("dirichlet distribution requires a random stream")]
    MissingRng,
    #[error("shape parameter {name} must be positive and finite, got {value}")]
    NonPositiveShape { name: &'static str, value: f64 },
    #[error("invalid probability vector: {0}")]
    InvalidProbabilities(String),
    #[error("total missing mass: cannot convert m = {0} into a support size")]
    TotalMissingMass(f64),
    #[error("label index {0} is out of range")]
    LabelOutOfRange(usize),
    #[error("label index {0} appears more than once")]
    DuplicateLabel(usize),
    #[error("{found} observed labels but {expected} label indices")]
    LabelMapMismatch { expected: usize, found: usize },
    #[error("{estimator} requires a sample of size at least {min}, got {got}")]
    SampleTooSmall { estimator: &'static str, min: usize, got: usize },
    #[error("length mismatch: {left} estimates vs {right} truths")]
    LengthMismatch { left: usize, right: usize },
    #[error("no values supplied")]
    EmptyInput,
    #[error("bootstrap needs at least 2 values, got {0}")]
    TooFewValues(usize),
    #[error("confidence level must lie strictly between 0 and 1, got {0}")]
    InvalidLevel(f64),
    #[error("ballots rank different estimator sets")]
    InconsistentBallots,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown {kind} tag `{tag}` (expected one of: {valid})")]
    UnknownTag { kind: &'static str, tag: String, valid: String },
}

pub type Result<T> = std::result::Result<T, Error>;
