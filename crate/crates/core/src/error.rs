use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),

    #[error("operator is not nilpotent")]
    NotNilpotent,

    #[error("matrix is singular")]
    Singular,

    #[error("not a mixed Hodge structure at (a,b) = ({a},{b}): {reason}")]
    NotMhs { a: i32, b: i32, reason: String },

    #[error("not a morphism: {filtration} fails at index {index}")]
    NotMorphism { filtration: &'static str, index: i32 },

    #[error("morphism does not commute with delta (distance {distance:e})")]
    DeltaCommutation { distance: f64 },

    #[error("delta verification failed: {check} (residual {residual:e})")]
    DeltaVerification { check: &'static str, residual: f64 },

    #[error("shape error at weight {weight}: {reason}")]
    Shape { weight: i32, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("relative weight filtration does not exist: {0}")]
    NoRelativeFiltration(String),

    #[error("orbit is not admissible: {0}")]
    Admissibility(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("invalid period matrix: {0}")]
    InvalidPeriod(String),
}
