use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch")]
    ShapeMismatch,
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("not p-divisible: denominator {den} is divisible by {p}")]
    NotPDivisible { den: u64, p: u64 },
    #[error("denominator divisible by p: nil bound {bound} is not below p = {p}")]
    BoundTooLarge { bound: usize, p: u64 },
    #[error("endomorphism is not nilpotent within bound {0}")]
    NotNilpotent(usize),
    #[error("not an abelian p-group: {0}")]
    NotAbelianPGroup(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("not Lazard: {0}")]
    NotLazard(String),
    #[error("axiom failure: {0}")]
    AxiomFailure(String),
    #[error("theorem check failed: {0}")]
    TheoremViolation(String),
    #[error("order {order} exceeds cap {cap}; pass a force flag to override")]
    CapExceeded { order: usize, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
