use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("geometric expansion needs a strictly positive minimal q-exponent, found {found}")]
    NonPositiveValuation { found: String },

    #[error("exponent {0} is not a non-negative integer power of q")]
    NonIntegralExponent(String),

    #[error("negative q-exponent {0} is not representable in a truncated series")]
    NegativeExponent(String),

    #[error("dimension mismatch: lattice rank {expected}, class has {found} coordinates")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} = {value} must be odd")]
    EvenIntersection { what: &'static str, value: i64 },

    #[error("unsupported surface or polarization: {0}")]
    Unsupported(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("invalid series encoding: {0}")]
    Encoding(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
