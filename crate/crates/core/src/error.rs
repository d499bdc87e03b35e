use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The decomposition hypothesis `m >= r + 1` is violated.
    #[error("the decomposition requires m >= r+1 (got r = {r}, m = {m})")]
    Hypothesis { r: u32, m: i64 },

    /// A produced zeta argument or Euler sum would not converge.
    #[error("divergent term: {0}")]
    Divergence(String),

    /// Expression is not in the shape an operation expects.
    #[error("structural error: {0}")]
    Structure(String),

    /// A brute-force oracle was asked for an instance above its size cap.
    #[error("resource guard: {what} = {value} exceeds cap {cap}")]
    ResourceGuard { what: &'static str, value: u64, cap: u64 },

    /// The requested accuracy needs more terms than allowed.
    #[error("iteration cap: {needed} terms needed, cap is {cap}")]
    IterationCap { needed: u64, cap: u64 },

    /// An exact computation produced an impossible value.
    #[error("internal consistency error: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
