//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cover relation creates a cycle through `{0}`")]
    Cycle(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("labels are required for this operation but the poset has none")]
    MissingLabels,
    #[error("labels must be pairwise distinct; `{0}` is used twice")]
    DuplicateLabel(u64),
    #[error("rejection sampling gave up after {0} attempts")]
    GenerationFailed(usize),
    #[error("row {row} is not a chain: `{a}` and `{b}` are incomparable")]
    NotAChain { row: usize, a: String, b: String },
    #[error("row index {0} outside 1..={1}")]
    RowOutOfRange(usize, usize),
    #[error("element `{0}` appears {1} times across the rows (expected exactly once)")]
    BadElementCount(String, usize),
    #[error("weak-alignment enumeration guard exceeded: {size} elements > {guard}")]
    GuardExceeded { size: usize, guard: usize },
    #[error("operator {0} is undefined on this array")]
    OperatorUndefined(&'static str),
    #[error("monomial multiset is not symmetric: orbit of exponent vector {witness:?} has inconsistent multiplicities")]
    AsymmetricInput { witness: Vec<usize> },
    #[error("component character is not symmetric: orbit of weight {witness:?} has inconsistent multiplicities")]
    AsymmetricCharacter { witness: Vec<usize> },
    #[error("partition has {len} parts but only {n_vars} variables are available")]
    LengthExceedsVars { len: usize, n_vars: usize },
    #[error("polynomial is not homogeneous")]
    NonHomogeneous,
    #[error("partitions of unequal sizes {0} and {1} are incomparable in dominance order")]
    UnequalSizes(usize, usize),
    #[error("no permutation of the partition produces weight {weight:?}")]
    NoValidPi { weight: Vec<usize> },
    #[error("tableau does not have a two-row weight")]
    NotTwoRowTableau,
    #[error("diagram is not in the crystal component of the tableau's diagram")]
    DiagramNotInComponent,
    #[error("ascent statistic is not constant on a component: {0}")]
    AscNotConstant(String),
    #[error("verification failed: {0}")]
    VerificationFailure(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
