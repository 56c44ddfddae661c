use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("prime index {index} is outside the table (1..={count})")]
    IndexOutOfRange { index: u64, count: u64 },

    #[error("value {value} exceeds the sieved limit {limit}")]
    ValueOutOfRange { value: u64, limit: u64 },

    #[error("sieve limit {requested} exceeds the configured cap {cap}")]
    ResourceLimit { requested: u64, cap: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no stable start: the family does not hold at the scan end {scan_to}")]
    NoStableStart { scan_to: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
