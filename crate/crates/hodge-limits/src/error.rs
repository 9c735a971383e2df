use thiserror::Error;

/// Errors shared across the crate. Every operation that can reject its
/// input reports the offending datum, not just a category.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not nilpotent: power {power} of the matrix is nonzero")]
    NotNilpotent { power: usize },
    #[error("matrix is not unipotent: (T - I)^{power} is nonzero")]
    NotUnipotent { power: usize },
    #[error("nilpotency index {index} exceeds the declared center {center}")]
    IndexExceedsCenter { index: usize, center: usize },
    #[error("subspace inclusion violated: {0}")]
    InclusionViolation(String),
    #[error("bilinear form is degenerate (rank {rank} < dimension {dim})")]
    DegenerateForm { rank: usize, dim: usize },
    #[error("gram matrix does not match declared symmetry {0}")]
    SymmetryMismatch(String),
    #[error("infinitesimal isometry fails: S(N e_{i}, e_{j}) + S(e_{i}, N e_{j}) != 0")]
    NotInfinitesimalIsometry { i: usize, j: usize },
    #[error("weight index {k} out of admissible range: {reason}")]
    WeightOutOfRange { k: i64, reason: String },
    #[error("operator/filtration pair mismatch: {0}")]
    MismatchedPair(String),
    #[error("not a valid mixed Hodge structure: {0}")]
    InvalidMhs(String),
    #[error("splitting is not split over R: {0}")]
    NotRSplit(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("unknown ring {0}")]
    UnknownRing(String),
    #[error("ring {0} carries Betti data only; structure constants are not available")]
    MissingProducts(String),
    #[error("catalogue validation failed for {entry}: {reason}")]
    CatalogueInvalid { entry: String, reason: String },
    #[error("non-dominant weight: coefficient of fundamental weight {index} is negative")]
    NonDominantWeight { index: usize },
    #[error("unknown root system {0}")]
    UnknownRootSystem(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("construction defect: {0}")]
    Defect(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
