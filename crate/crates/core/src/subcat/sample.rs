use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{member, SubcatError, SubcatPredicate};
use crate::exactfield::{FieldSpec, Matrix};
use crate::quiverrep::{build_extension, random_cocycle, DimVector, Quiver, Representation};

pub const DEFAULT_RETRIES: usize = 1000;

/// A triple `(N, M, Z)` with `N, M` in the subcategory and the extension
/// built from `Z` outside it.
#[derive(Clone, Debug, Serialize)]
pub struct ExtensionViolation {
    pub trial: usize,
    pub sub: Representation,
    pub quotient: Representation,
    pub cocycle: Vec<Matrix>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionSampleReport {
    pub trials: usize,
    pub rejected_draws: usize,
    pub violations: Vec<ExtensionViolation>,
}

struct Sampler<'a> {
    pred: &'a SubcatPredicate,
    quiver: Arc<Quiver>,
    field: FieldSpec,
    dims: &'a [DimVector],
    retries: usize,
    rejected: usize,
}

impl Sampler<'_> {
    fn draw(&mut self, rng: &mut ChaCha8Rng) -> Result<Representation, SubcatError> {
        let mut last = self.dims[0].clone();
        for _ in 0..self.retries {
            last = self.dims[rng.gen_range(0..self.dims.len())].clone();
            let x = Representation::random(self.quiver.clone(), self.field, last.clone(), rng)?;
            if member(self.pred, &x)? {
                return Ok(x);
            }
            self.rejected += 1;
        }
        Err(SubcatError::SamplerStarved {
            dims: last,
            tries: self.retries,
        })
    }
}

/// Draws members `N`, `M` of `pred` by rejection sampling from random
/// representations with dimension vectors in `dims`, extends `M` by `N` with a
/// random cocycle, and records every extension that falls outside `pred`.
pub fn extension_closed_sample(
    pred: &SubcatPredicate,
    quiver: Arc<Quiver>,
    field: FieldSpec,
    dims: &[DimVector],
    trials: usize,
    retries: usize,
    seed: u64,
) -> Result<ExtensionSampleReport, SubcatError> {
    if dims.is_empty() {
        return Err(SubcatError::EmptyDimsList);
    }
    pred.validate()?;
    let mut sampler = Sampler {
        pred,
        quiver,
        field,
        dims,
        retries,
        rejected: 0,
    };
    let mut violations = Vec::new();
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial as u64));
        let n = sampler.draw(&mut rng)?;
        let m = sampler.draw(&mut rng)?;
        let z = random_cocycle(&n, &m, &mut rng);
        let ses = build_extension(&n, &m, &z)?;
        if !member(pred, &ses.middle)? {
            violations.push(ExtensionViolation {
                trial,
                sub: n,
                quotient: m,
                cocycle: z,
            });
        }
    }
    Ok(ExtensionSampleReport {
        trials,
        rejected_draws: sampler.rejected,
        violations,
    })
}
