use thiserror::Error;

/// Engine errors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed or inconsistent input.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An operation's precondition does not hold for the given data.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A computed identity that must hold did not.
    #[error("invariant breach: {0}")]
    Invariant(String),
    /// Root isolation was asked for the zero polynomial.
    #[error("zero polynomial has no root isolation")]
    ZeroPolynomial,
    /// Data with a trivial bundle curvature; the metric is a local product.
    #[error("flat-bundle local product: every beta is zero")]
    FlatBundle,
}

pub type Result<T> = std::result::Result<T, Error>;
