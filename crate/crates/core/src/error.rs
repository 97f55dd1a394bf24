use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} must be a prime greater than 3")]
    BadCharacteristic(u64),
    #[error("no stored irreducible polynomial for p = {p}, e = {e}")]
    UnsupportedExtension { p: u64, e: usize },
    #[error("defining polynomial of degree {0} is not irreducible")]
    Reducible(usize),
    #[error("valuation undefined for the zero polynomial")]
    ZeroValuation,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("type-profile hypothesis fails for gamma = {0:?}")]
    HypothesisFails(Vec<u64>),
    #[error("origin lies inside an interval with large exponent; rotate labels first")]
    RotateFirst,
    #[error("invalid (k, s) combination: k = {k}, s = {s}")]
    InvalidPair { k: u64, s: &'static str },
    #[error("chart empty: class tuple contains an empty factor")]
    ChartEmpty,
    #[error("chart variables mismatch: {0}")]
    Variables(String),
    #[error("could not satisfy open conditions after {0} attempts")]
    Sampling(usize),
    #[error("point does not lie on the locus")]
    OffLocus,
    #[error("degree bounds too small: {0}")]
    IncreaseBounds(String),
    #[error("{0} out of range")]
    OutOfRange(String),
    #[error("enumeration of {count} weights exceeds bound {bound}")]
    Bound { count: u128, bound: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;
