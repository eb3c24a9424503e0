use std::collections::BTreeSet;

use serde::Serialize;

use super::{hom_dim, HomSystem, QuiverError, Representation};
use crate::exactfield::FieldKind;

/// Which argument of Hom carries the pencil.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PencilSide {
    /// `h(t) = dim Hom(X, M0 + t·M1)`
    Target,
    /// `h(t) = dim Hom(M0 + t·M1, X)`
    Source,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilReport {
    pub side: PencilSide,
    pub unknowns: usize,
    pub at_zero: usize,
    pub samples: Vec<(i64, usize)>,
    pub generic: usize,
    pub holds: bool,
}

/// Evaluates `h(t)` at `t = 0` and at each sample, and records whether
/// `h(0) ≥ min_t h(t)`.
///
/// The samples must be distinct, nonzero, and at least `r + 1` in number, where
/// `r` is the number of unknowns in the Hom system; then some sample attains
/// the generic value.
pub fn pencil_hom_semicontinuity(
    m0: &Representation,
    m1: &Representation,
    x: &Representation,
    samples: &[i64],
    side: PencilSide,
) -> Result<PencilReport, QuiverError> {
    for r in [m0, m1, x] {
        if r.field().kind() != FieldKind::Rationals {
            return Err(QuiverError::NonRationalField);
        }
    }
    m0.check_compatible(x)?;
    let mut seen = BTreeSet::new();
    for &t in samples {
        if t == 0 {
            return Err(QuiverError::ZeroSample);
        }
        if !seen.insert(t) {
            return Err(QuiverError::DuplicateSample(t));
        }
    }
    let unknowns = match side {
        PencilSide::Target => HomSystem::assemble(x, m0)?.unknowns(),
        PencilSide::Source => HomSystem::assemble(m0, x)?.unknowns(),
    };
    if samples.len() < unknowns + 1 {
        return Err(QuiverError::TooFewSamples {
            needed: unknowns + 1,
            got: samples.len(),
        });
    }
    let field = m0.field();
    let h = |t: i64| -> Result<usize, QuiverError> {
        let mt = m0.pencil_at(m1, &field.from_i64(t))?;
        match side {
            PencilSide::Target => hom_dim(x, &mt),
            PencilSide::Source => hom_dim(&mt, x),
        }
    };
    let at_zero = h(0)?;
    let values = samples.iter().map(|&t| Ok((t, h(t)?))).collect::<Result<Vec<_>, QuiverError>>()?;
    let generic = values.iter().map(|&(_, v)| v).min().unwrap_or(at_zero);
    Ok(PencilReport {
        side,
        unknowns,
        at_zero,
        samples: values,
        generic,
        holds: at_zero >= generic,
    })
}
