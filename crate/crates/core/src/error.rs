use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("unsupported factorization: {0}")]
    UnsupportedFactorization(String),
    #[error("matrix is not unimodular over {0}")]
    NotUnimodular(&'static str),
    #[error("polynomial `{0}` is not monic irreducible")]
    NotIrreducible(String),
    #[error("torsion data disagree on the overlap: {0}")]
    InconsistentGlue(String),
    #[error("bundle has a negative splitting twist; twist it first")]
    NegativeTwistPresent,
    #[error("tube ranks differ: {0} vs {1}")]
    RankMismatch(u32, u32),
    #[error("vertex `{0}` not found")]
    VertexNotFound(String),
    #[error("arrow cannot be contracted: {0}")]
    NotContractible(String),
    #[error("quiver has an oriented cycle")]
    NonAcyclic,
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("weighted points are not pairwise distinct")]
    DuplicatePoints,
    #[error("weight {0} is below 2")]
    WeightTooSmall(u32),
    #[error("expected {expected} entries, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("no line bundle has class {0}")]
    NoLineBundleWithClass(String),
    #[error("triple of points is not pairwise distinct")]
    DegenerateTriple,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
