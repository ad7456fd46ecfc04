use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("element is not hyperbolic (|trace| = {trace})")]
    NotHyperbolic { trace: f64 },
    #[error("geodesics share an endpoint")]
    SharedEndpoint,
    #[error("length must be positive, got {0}")]
    NonPositiveLength(f64),
    #[error("length must be non-negative, got {0}")]
    NegativeLength(f64),
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(u32),
    #[error("length {0} is below the supported minimum 1e-4")]
    DegenerateLength(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("holonomy construction only supports the canonical chain-of-handles pants graph")]
    UnsupportedTopology,
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("enumeration budget exceeded: {needed} words requested, cap is {cap}")]
    BudgetExceeded { needed: u64, cap: u64 },
    #[error("curve is not simple: {0}")]
    NotSimple(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("word reduces to the identity")]
    TrivialWord,
    #[error("eps must be positive, got {0}")]
    NonPositiveEps(f64),
}
