//! Subcategories of representations cut out by vanishing of Hom/Ext¹ and by
//! projective dimension, and computations relative to them.

mod filtration;
mod predicate;
mod sample;

pub use filtration::{is_filtered_by, FiltOutcome, FiltStep};
pub use predicate::{exact_grassmannian_points, member, SubcatPredicate};
pub use sample::{extension_closed_sample, ExtensionSampleReport, ExtensionViolation, DEFAULT_RETRIES};

use thiserror::Error;

use crate::quiverrep::{DimVector, QuiverError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubcatError {
    #[error("Ext indices must be a nonempty subset of {{0, 1}}")]
    BadExtIndices,
    #[error("an intersection needs at least one predicate")]
    EmptyIntersection,
    #[error("the ambient representation is not in the subcategory")]
    NotInSubcategory,
    #[error("no member of the subcategory found at any of the given dimension vectors after {tries} draws (last tried {dims})")]
    SamplerStarved { dims: DimVector, tries: usize },
    #[error("no dimension vectors to sample from")]
    EmptyDimsList,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}
