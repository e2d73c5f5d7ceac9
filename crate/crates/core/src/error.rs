use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Dk2Error {
    #[error("divergent multiple zeta value: first entry of {0:?} must be at least 2")]
    Divergent(Vec<u32>),
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("missing value of eps for a coefficient containing ln(eps)")]
    MissingEps,
    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(u8, u8),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("invalid strand map: {0}")]
    InvalidStrandMap(String),
    #[error("witness mismatch: boundary of the witness is not the commutator")]
    WitnessMismatch,
    #[error("unsupported order {order}: maximum is {max}")]
    UnsupportedOrder { order: usize, max: usize },
    #[error("resource limit exceeded: {0}")]
    Overflow(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("chart mismatch: {0}")]
    ChartMismatch(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("path leaves the open triangle: {0}")]
    OutsideDomain(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
}

pub type Result<T> = std::result::Result<T, Dk2Error>;
