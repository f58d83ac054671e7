use thiserror::Error;

/// Errors raised by the numerical layers of the crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point {0} is within the south-pole guard of the Cayley transform")]
    SouthPole(String),

    #[error("{op} did not converge after {terms} terms")]
    NonConvergence { op: &'static str, terms: usize },

    #[error("quadrature tolerance not met after {subdivisions} subdivisions (estimated error {error:e})")]
    Tolerance { subdivisions: usize, error: f64 },

    #[error("non-finite integrand value at sample {index}, xi = {point}")]
    NonFinite { index: u64, point: String },

    #[error("invalid sampler: {0}")]
    Sampler(String),

    #[error("no lower-bound construction applies: {0}")]
    Dispatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        op,
        detail: detail.into(),
    }
}
