use thiserror::Error;

use crate::field::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("factorization failed: {0}")]
    Factorization(String),
    #[error("subspace is not a subcoalgebra")]
    NotASubcoalgebra,
    #[error("subspace is not a coideal")]
    NotACoideal,
    #[error("tensor power needs {needed} coordinates, size cap is {cap}")]
    SizeCapExceeded { needed: usize, cap: usize },
    #[error("unsupported field {0}; this computation needs characteristic zero")]
    UnsupportedField(Field),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not a coalgebra: {0}")]
    InvalidCoalgebra(String),
    #[error("not a coalgebra morphism: {0}")]
    InvalidMorphism(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
