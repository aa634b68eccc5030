use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("label `{0}` is not part of the lattice basis")]
    MismatchedBasis(String),
    #[error("duplicate basis label `{0}`")]
    LabelCollision(String),
    #[error("basis element `{label}` has square {square}, expected +1 or -1")]
    BadSquare { label: String, square: i64 },
    #[error("c1 is not characteristic: c1.{label} = {pairing} but {label}.{label} = {square}")]
    NotCharacteristic {
        label: String,
        pairing: String,
        square: i64,
    },
    #[error("signature {signature} disagrees with b+ - b- = {expected}")]
    InconsistentSignature { signature: i64, expected: i64 },
    #[error("formal dimension numerator {0} is not divisible by 4")]
    NonIntegralDimension(String),
    #[error("block has {got} labels but the self-intersection is {expected}")]
    BlockSize { expected: String, got: usize },
    #[error("surface `{id}` has self-intersection {value}, expected 0")]
    NonzeroSelfIntersection { id: String, value: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown surface `{0}`")]
    UnknownSurface(String),
    #[error("invalid catalog: {0}")]
    InvalidCatalog(String),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("vertex `{0}` repeated in simplex")]
    RepeatedVertex(String),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("not joinable: {0}")]
    NotJoinable(String),
    #[error("not a simplex of the complex: {0}")]
    NotASimplex(String),
    #[error("point outside the domain: {0}")]
    OutOfDomain(String),
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("no conclusion: {0}")]
    NoConclusion(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
