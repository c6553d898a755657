use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("d∘d ≠ 0 in degree {degree} ({nonzero} nonzero entries)")]
    NotAComplex { degree: i64, nonzero: usize },
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("simplicial identity violated: {0}")]
    SimplicialIdentity(String),
    #[error("cosimplicial identity violated: {0}")]
    CosimplicialIdentity(String),
    #[error("sign convention error: {0}")]
    SignConvention(String),
    #[error("unknown simplex or object reference: {0}")]
    Dangling(String),
    #[error("resource ceiling exceeded: {0}")]
    Resource(String),
    #[error("coefficient overflow during {0}")]
    Overflow(&'static str),
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("invalid surjection sequence: {0}")]
    InvalidSequence(String),
    #[error("slot {slot} out of range for arity {arity}")]
    Slot { slot: usize, arity: usize },
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("not a boundary: {0}")]
    NotABoundary(String),
    #[error("non-composable word at position {position}: {reason}")]
    NotComposable { position: usize, reason: String },
    #[error("object out of truncation: {0}")]
    OutOfTruncation(String),
    #[error("naturality failure at morphism {0}")]
    Naturality(String),
    #[error("category law violated: {0}")]
    CategoryLaw(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("exact check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
