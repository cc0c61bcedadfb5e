use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("offset λ = {0} must be an integer in three dimensions")]
    NonIntegerOffset(String),

    #[error("spin {0} is not a half-integer")]
    InvalidSpin(String),

    #[error("points {0} and {1} coincide")]
    CoincidentPoints(usize, usize),

    #[error("expected {expected}-dimensional points, found {found} coordinates")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported spatial dimension {0}; expected 2 or 3")]
    UnsupportedDimension(usize),

    #[error("expected a two-particle configuration, found {0} particles")]
    NotTwoParticles(usize),

    #[error("the zero vector has no chart representative")]
    ZeroVector,

    #[error("winding is ambiguous: {0}")]
    AmbiguousWinding(String),

    #[error("extension with θ = {0} is not an involution (R² ≠ 1)")]
    NotInvolutive(f64),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("spectrum windows do not overlap")]
    EmptyOverlap,

    #[error("z-grid is not symmetric about 0")]
    AsymmetricGrid,

    #[error("invalid bound-state label l = {l}, m = {m}")]
    InvalidLabel { l: i64, m: i64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("report schema mismatch: {0}")]
    SchemaMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
