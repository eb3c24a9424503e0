use serde::Serialize;

use super::SubcatError;
use crate::quiverrep::{enumerate_subreps, ext1_dim, hom_dim, pdim, restrict_and_quotient, DimVector, Representation, SubrepPoint};

/// A subcategory given by its membership test. The defining modules are
/// embedded so the predicate can be serialized with a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SubcatPredicate {
    /// `{X : [X, M]^i = 0 for all M, all i ∈ ext}`
    LeftPerp { modules: Vec<Representation>, ext: Vec<u8> },
    /// `{X : [M, X]^i = 0 for all M, all i ∈ ext}`
    RightPerp { modules: Vec<Representation>, ext: Vec<u8> },
    PdimAtMost { n: u8 },
    Intersection { parts: Vec<SubcatPredicate> },
    All,
}

fn normalize_ext(ext: &[u8]) -> Result<Vec<u8>, SubcatError> {
    if ext.is_empty() || ext.iter().any(|&i| i > 1) {
        return Err(SubcatError::BadExtIndices);
    }
    let mut e = ext.to_vec();
    e.sort_unstable();
    e.dedup();
    Ok(e)
}

impl SubcatPredicate {
    pub fn left_perp(modules: Vec<Representation>, ext: &[u8]) -> Result<Self, SubcatError> {
        Ok(SubcatPredicate::LeftPerp {
            modules,
            ext: normalize_ext(ext)?,
        })
    }

    pub fn right_perp(modules: Vec<Representation>, ext: &[u8]) -> Result<Self, SubcatError> {
        Ok(SubcatPredicate::RightPerp {
            modules,
            ext: normalize_ext(ext)?,
        })
    }

    /// `^⊥M`, the modules with no nonzero map to `m`.
    pub fn hom_left_perp(m: Representation) -> Self {
        SubcatPredicate::LeftPerp {
            modules: vec![m],
            ext: vec![0],
        }
    }

    pub fn intersection(parts: Vec<SubcatPredicate>) -> Result<Self, SubcatError> {
        if parts.is_empty() {
            return Err(SubcatError::EmptyIntersection);
        }
        Ok(SubcatPredicate::Intersection { parts })
    }

    /// Re-checks the invariants of a predicate built by hand.
    pub fn validate(&self) -> Result<(), SubcatError> {
        match self {
            SubcatPredicate::LeftPerp { ext, .. } | SubcatPredicate::RightPerp { ext, .. } => normalize_ext(ext).map(|_| ()),
            SubcatPredicate::Intersection { parts } if parts.is_empty() => Err(SubcatError::EmptyIntersection),
            SubcatPredicate::Intersection { parts } => parts.iter().try_for_each(Self::validate),
            _ => Ok(()),
        }
    }
}

fn vanishes(x: &Representation, y: &Representation, i: u8) -> Result<bool, SubcatError> {
    Ok(match i {
        0 => hom_dim(x, y)? == 0,
        _ => ext1_dim(x, y)? == 0,
    })
}

pub fn member(pred: &SubcatPredicate, x: &Representation) -> Result<bool, SubcatError> {
    pred.validate()?;
    match pred {
        SubcatPredicate::All => Ok(true),
        SubcatPredicate::LeftPerp { modules, ext } => {
            for m in modules {
                for &i in ext {
                    if !vanishes(x, m, i)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        SubcatPredicate::RightPerp { modules, ext } => {
            for m in modules {
                for &i in ext {
                    if !vanishes(m, x, i)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        SubcatPredicate::PdimAtMost { n } => {
            x.quiver().require_acyclic()?;
            if *n >= 1 || x.is_zero() {
                Ok(true)
            } else {
                Ok(pdim(x)? == 0)
            }
        }
        SubcatPredicate::Intersection { parts } => {
            for p in parts {
                if !member(p, x)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// The subrepresentations `U` of `m` with dimension vector `e` such that both
/// `m|_U` and `m/U` satisfy `pred`.
pub fn exact_grassmannian_points(
    m: &Representation,
    e: &DimVector,
    pred: &SubcatPredicate,
    cap: u128,
) -> Result<Vec<SubrepPoint>, SubcatError> {
    if !member(pred, m)? {
        return Err(SubcatError::NotInSubcategory);
    }
    let mut out = Vec::new();
    for u in enumerate_subreps(m, e, cap)? {
        let (sub, quot) = restrict_and_quotient(m, &u)?;
        if member(pred, &sub)? && member(pred, &quot)? {
            out.push(u);
        }
    }
    Ok(out)
}
