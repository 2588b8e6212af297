use thiserror::Error;

use crate::graded::BasisRef;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("differential does not square to zero at basis vector {0}")]
    NotSquareZero(BasisRef),
    #[error("map is not a chain map at basis vector {0}")]
    NotChainMap(BasisRef),
    #[error("subspace is not stable under the map (basis row {0})")]
    NotStable(BasisRef),
    #[error("expected degree {expected}, found {found}")]
    Degree { expected: i32, found: i32 },
    #[error("not a sub-DG-Lie algebra: {0}")]
    NotSubalgebra(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("element is not closed")]
    NotClosed,
    #[error("map is not injective")]
    NotInjective,
}

pub type Result<T> = std::result::Result<T, Error>;
