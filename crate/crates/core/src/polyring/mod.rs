//! Homogeneous polynomials in `T_0, …, T_n`: parsing, evaluation, degree
//! normalization, the monomial sets M_{n,d} and the Veronese embedding.

mod monomial;
mod parse;
mod poly;

pub use monomial::{proportional, Monomial, MonomialBasis, ProjPoint, MONOMIAL_ORDER_ID};
pub use parse::parse_poly;
pub use poly::{normalize_degrees, NormalizeOptions, NormalizedSystem, Polynomial};

use thiserror::Error;

use crate::exactfield::FieldSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("variable T{index} at byte {position} exceeds T{n}")]
    VariableOutOfRange { index: usize, n: usize, position: usize },
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("{role} {index} is the zero polynomial")]
    ZeroInput { role: &'static str, index: usize },
    #[error("{role} {index} is not homogeneous")]
    NotHomogeneous { role: &'static str, index: usize },
    #[error("{role} {index} has degree 0; positive degree is required")]
    ConstantInput { role: &'static str, index: usize },
    #[error("{role} {index} lives in a different ring")]
    Incompatible { role: &'static str, index: usize },
    #[error("inequation {inequation} is a scalar multiple of equation {equation} (after degree normalization)")]
    ScalarMultiple { inequation: usize, equation: usize },
    #[error("at least one equation is required")]
    NoEquations,
    #[error("at least one inequation is required (projective mode not enabled)")]
    NoInequations,
    #[error("expected {expected} coordinates, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("expected degree {expected}, found a term of degree {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("point over {found} evaluated in a polynomial over {expected}")]
    FieldMismatch { expected: FieldSpec, found: FieldSpec },
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("the Veronese inverse needs degree at least 1")]
    ZeroDegree,
    #[error("point enumeration requires a finite field")]
    InfiniteField,
}
