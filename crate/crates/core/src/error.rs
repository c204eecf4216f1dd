use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set mismatch: {0}")]
    GroundMismatch(String),
    #[error("ground sets overlap: {0}")]
    Overlap(String),
    #[error("not a subset of the ground set: {0}")]
    NotSubset(String),
    #[error("not a decomposition of the ground set: {0}")]
    BadDecomposition(String),
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("not a refinement: {0}")]
    NotRefinement(String),
    #[error("invalid permutation: {0}")]
    InvalidPerm(String),
    #[error("invalid bijection: {0}")]
    InvalidBijection(String),
    #[error("relation is not transitive: {0}")]
    NotTransitive(String),
    #[error("preposet is not total: {0}")]
    NotTotal(String),
    #[error("size guard exceeded: {0}")]
    TooLarge(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
