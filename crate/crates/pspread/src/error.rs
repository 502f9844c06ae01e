use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("{0} is not a prime power")]
    NotPrimePower(u32),

    #[error("field of order {order} exceeds the supported table size {max}")]
    FieldTooLarge { order: u64, max: u64 },

    #[error("polynomial is not monic")]
    NonMonic,

    #[error("polynomial is reducible")]
    Reducible,

    #[error("polynomial degree {found} does not match expected degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("element does not belong to this field context")]
    ContextMismatch,

    #[error("inversion of zero")]
    ZeroInverse,

    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,

    #[error("matrix is not an element of the companion algebra")]
    NotAlgebraElement,

    #[error("matrix does not match any codeword template")]
    NotACodeword,

    #[error("no codeword within the unique decoding radius")]
    NotDecodable,

    #[error("index {index} out of range for code of size {cardinality}")]
    IndexOutOfRange { index: u128, cardinality: u128 },

    #[error("enumeration of {needed} objects exceeds the limit {limit}")]
    LimitExceeded { needed: u128, limit: u128 },

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
