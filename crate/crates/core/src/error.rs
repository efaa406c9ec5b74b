use thiserror::Error;

/// Errors raised by ring, polynomial, matrix and oracle operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different rings: {left} vs {right}")]
    SpecMismatch { left: String, right: String },

    #[error("element {0} is not a unit")]
    NotAUnit(String),

    #[error("operation not supported for ring {0}")]
    UnsupportedFamily(String),

    #[error("ring {0} is infinite and cannot be enumerated")]
    InfiniteRing(String),

    #[error("strongly clean decomposition is not available over {0}")]
    UnsupportedRing(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid ring: {0}")]
    InvalidSpec(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("polynomial {0} is not monic")]
    NotMonic(String),

    #[error("residue factors are not coprime (gcd = {0})")]
    NotCoprime(String),

    #[error("residue factors multiply to {product}, expected {expected}")]
    ResidueMismatch { product: String, expected: String },

    #[error("matrix is not idempotent")]
    NotIdempotent,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("work bound exceeded: {needed} > {bound}")]
    BoundExceeded { needed: u128, bound: u64 },

    #[error("witness degenerate: {0}")]
    WitnessDegenerate(String),

    #[error("internal check failed: {0}")]
    InternalCheckFailed(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    /// Stable machine-readable code, used by the CLI's JSON error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::SpecMismatch { .. } => "spec_mismatch",
            Error::NotAUnit(_) => "not_a_unit",
            Error::UnsupportedFamily(_) => "unsupported_family",
            Error::InfiniteRing(_) => "infinite_ring",
            Error::UnsupportedRing(_) => "unsupported_ring",
            Error::NotPrime(_) => "not_prime",
            Error::InvalidSpec(_) => "invalid_spec",
            Error::InvalidElement(_) => "invalid_element",
            Error::NotMonic(_) => "not_monic",
            Error::NotCoprime(_) => "not_coprime",
            Error::ResidueMismatch { .. } => "residue_mismatch",
            Error::NotIdempotent => "not_idempotent",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::PreconditionViolated(_) => "precondition_violated",
            Error::BoundExceeded { .. } => "bound_exceeded",
            Error::WitnessDegenerate(_) => "witness_degenerate",
            Error::InternalCheckFailed(_) => "internal_check_failed",
            Error::Parse { .. } => "parse_error",
        }
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
