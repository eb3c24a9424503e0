//! Exact arithmetic over ℚ and 𝔽_p and the dense linear algebra kernel used
//! throughout the crate.

mod matrix;
mod scalar;

pub use matrix::{Matrix, Rref};
pub use scalar::{FieldKind, FieldSpec, Scalar, MAX_PRIME};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime modulus {0} exceeds the supported maximum {MAX_PRIME}")]
    ModulusTooLarge(u64),
    #[error("cannot parse field spec `{0}` (expected `Q` or `Fp:<p>`)")]
    BadFieldSpec(String),
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("ragged rows: expected {expected} columns, found {found}")]
    Ragged { expected: usize, found: usize },
}
