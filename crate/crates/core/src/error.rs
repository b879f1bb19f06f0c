use thiserror::Error;

/// Errors raised while reading or validating a grid diagram.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("malformed grid: {0}")]
    Syntax(String),
    #[error("grid size must be at least 2, got {0}")]
    TooSmall(usize),
    #[error("{which} markings do not form a permutation of 0..{n}")]
    NotPermutation { which: &'static str, n: usize },
    #[error("row {row} has its O and X in the same column {col}")]
    CoincidentMarkings { row: usize, col: usize },
    #[error("length of {which} is {got}, expected n = {n}")]
    LengthMismatch { which: &'static str, got: usize, n: usize },
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("expected a knot, found a link with {0} components")]
    NotAKnot(usize),
}

/// Errors from the homology pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComputeError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("grid size {n} exceeds the configured cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("relative gradings are inconsistent around a cycle of rectangles")]
    InconsistentGradings,
    #[error("no-O homology has rank {got}, expected {expected}")]
    TorusRankMismatch { got: usize, expected: usize },
    #[error("no Alexander shift matches (1 - q^-1)^(n-1) * Delta")]
    NoAlexanderShift,
    #[error("absolute gradings require a knot; this grid has {0} components")]
    LinkNotSupported(usize),
    #[error("differential does not square to zero")]
    NotAComplex,
    #[error("polynomial division is not exact: {0}")]
    InexactDivision(String),
    #[error("expected exactly one tower, found {0}")]
    TowerCount(usize),
    #[error("{0}")]
    Invalid(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

/// Errors from the surgery module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("model document could not be parsed: {0}")]
    Parse(String),
    #[error("duplicate generator id {0:?}")]
    DuplicateId(String),
    #[error("arrow references unknown generator {0:?}")]
    UnknownId(String),
    #[error("arrow {from}->{to}: Maslov drop {got}, expected 1 - 2*nw = {expected}")]
    MaslovViolation { from: String, to: String, got: i64, expected: i64 },
    #[error("arrow {from}->{to}: Alexander drop {got}, expected nz - nw = {expected}")]
    AlexanderViolation { from: String, to: String, got: i64, expected: i64 },
    #[error("differential does not square to zero ({0} nonzero terms)")]
    NotAComplex(usize),
    #[error("flip is not an involution covering every generator: {0}")]
    FlipNotInvolution(String),
    #[error("flip does not send (M, A) to (M - 2A, -A) at {0:?}")]
    FlipGrading(String),
    #[error("flip does not intertwine the arrows: {0}")]
    FlipArrows(String),
    #[error("polynomial is not of staircase form: {0}")]
    NotStaircase(String),
    #[error("surgery coefficient must be nonzero")]
    ZeroFraming,
    #[error("truncation radius {got} is below the required {required}")]
    RadiusTooSmall { got: i64, required: i64 },
    #[error("truncation check failed: {0}")]
    TruncationCheck(String),
    #[error("plus-flavor homology did not stabilize by cutoff {0}")]
    NoStabilization(i64),
    #[error("unknown bundled model {0:?}")]
    UnknownModel(String),
    #[error(transparent)]
    Compute(#[from] ComputeError),
}

/// Report-level collections of the individual validation failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("model failed validation: {}", .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
pub struct ModelValidation(pub Vec<ModelError>);
