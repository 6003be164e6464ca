use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no centers")]
    NoCenters,

    #[error("instance has no customers")]
    NoCustomers,

    #[error("k = {k} must satisfy 1 <= k <= {customers}")]
    InvalidK { k: usize, customers: usize },

    #[error("customer {index} has a non-finite coordinate")]
    NonFiniteCoordinate { index: usize },

    #[error("center index {index} out of range for {customers} customers")]
    CenterOutOfRange { index: usize, customers: usize },

    #[error("center index {0} appears more than once")]
    DuplicateCenter(usize),

    #[error("instance too large for exact solver: {subsets} subsets exceed the cap of {cap}")]
    TooLargeForExact { subsets: u128, cap: u128 },

    #[error("genome length mismatch: {left} vs {right}")]
    GenomeLengthMismatch { left: usize, right: usize },

    #[error("gene {index} = {value} is outside the open unit interval")]
    GeneOutOfRange { index: usize, value: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
