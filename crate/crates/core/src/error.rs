use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("negative exponent")]
    NegativeExponent,
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("resource limit exceeded: {what} (budget {budget})")]
    ResourceLimit { what: String, budget: usize },
    #[error("ideal is not monomial and no decomposition was declared")]
    NotMonomialAndNotDeclared,
    #[error("declared decomposition is inconsistent: {0}")]
    DeclaredDecompositionInconsistent(String),
    #[error("minimal primes unavailable: {0}")]
    DecompositionUnavailable(String),
    #[error("ring is not certified Gorenstein")]
    NotCertifiedGorenstein,
    #[error("hypothesis not certified: {0}")]
    HypothesisNotCertified(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("witness not found: {0}")]
    WitnessNotFound(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn resource(what: impl Into<String>, budget: usize) -> Self {
        Error::ResourceLimit { what: what.into(), budget }
    }
}
