//! Quivers, their representations, and the linear algebra of morphisms
//! between them.

mod extension;
mod hom;
mod iso;
mod quiver;
mod rep;
mod semicont;
mod subrep;
mod subspace;

pub use extension::{build_extension, coboundary, random_cocycle, ShortExactSequence};
pub use hom::{ext1_dim, hom_basis, hom_dim, pdim, HomSystem};
pub use iso::{are_isomorphic, are_isomorphic_with, IsoOptions, IsoVerdict};
pub use quiver::{euler_form, Arrow, DimVector, Path, Quiver};
pub use rep::{invert, random_invertible, random_matrix, random_scalar, Morphism, Representation};
pub use semicont::{pencil_hom_semicontinuity, PencilReport, PencilSide};
pub use subrep::{enumerate_subreps, restrict_and_quotient, subrep_count, SubrepPoint};
pub use subspace::{enumerate_subspaces, gaussian_binomial, Subspace, DEFAULT_CAP};

use thiserror::Error;

use crate::exactfield::{FieldError, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("vertex {vertex} out of range for a quiver with {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("quiver has an oriented cycle")]
    NotAcyclic,
    #[error("representations live on different quivers")]
    QuiverMismatch,
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },
    #[error("dimension vector has length {found}, expected {expected}")]
    DimVectorLength { expected: usize, found: usize },
    #[error("{found} arrow matrices given, quiver has {expected} arrows")]
    ArrowCount { expected: usize, found: usize },
    #[error("arrow {arrow} matrix is {found:?}, expected {expected:?}")]
    ArrowShape {
        arrow: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("dimension vectors differ: {left} vs {right}")]
    DimensionMismatch { left: DimVector, right: DimVector },
    #[error("base change at vertex {vertex} is not invertible")]
    NotInvertible { vertex: usize },
    #[error("zero representation")]
    ZeroRepresentation,
    #[error("Ext routes disagree: hom {hom}, cokernel {cokernel}, euler {euler}")]
    RouteMismatch { hom: usize, cokernel: usize, euler: i64 },
    #[error("enumeration needs a finite field")]
    InfiniteField,
    #[error("enumeration size {} exceeds cap {cap}", needed.map_or("overflow".to_string(), |n| n.to_string()))]
    CapExceeded { needed: Option<u128>, cap: u128 },
    #[error("subspace of dimension {sub} requested in ambient dimension {ambient}")]
    SubDimension { sub: usize, ambient: usize },
    #[error("subspace tuple is not stable under arrow {arrow}")]
    NotStable { arrow: usize },
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("pencil checks need the rational field")]
    NonRationalField,
    #[error("sample {0} is repeated")]
    DuplicateSample(i64),
    #[error("sample points must be nonzero")]
    ZeroSample,
    #[error("{got} samples given, at least {needed} needed")]
    TooFewSamples { needed: usize, got: usize },
    #[error(transparent)]
    Linear(#[from] FieldError),
}
