use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::SubcatError;
use crate::quiverrep::{
    are_isomorphic, enumerate_subreps, restrict_and_quotient, subrep_count, DimVector, IsoVerdict, QuiverError, Representation, SubrepPoint,
};

/// One step of a filtration certificate: the subrepresentation `U` of the
/// current module, isomorphic to `layers[layer]`. The search continues in the
/// quotient by `U`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltStep {
    pub layer: usize,
    pub subrep: SubrepPoint,
    pub remaining: DimVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum FiltOutcome {
    Yes { chain: Vec<FiltStep> },
    No,
    CapExceeded,
}

struct Search<'a> {
    layers: &'a [Representation],
    cap: u128,
    work: u128,
    failed: HashSet<Representation>,
    reachable: HashMap<DimVector, bool>,
    undetermined: bool,
}

enum Step {
    Found(Vec<FiltStep>),
    NotFound,
    Abort,
}

/// Searches for `0 = X_0 ⊂ X_1 ⊂ ⋯ ⊂ X_r = X` whose subquotients are each
/// isomorphic to some layer. Layers may be used any number of times.
///
/// The chain is built from the bottom: a subrepresentation isomorphic to a
/// layer, then recursively in the quotient. `cap` bounds the total number of
/// candidate subspace tuples over the whole search.
pub fn is_filtered_by(x: &Representation, layers: &[Representation], cap: u128) -> Result<FiltOutcome, SubcatError> {
    x.field().order().ok_or(QuiverError::InfiniteField)?;
    for l in layers {
        x.check_compatible(l)?;
    }
    let mut s = Search {
        layers,
        cap,
        work: 0,
        failed: HashSet::new(),
        reachable: HashMap::new(),
        undetermined: false,
    };
    Ok(match s.run(x)? {
        Step::Found(chain) => FiltOutcome::Yes { chain },
        Step::Abort => FiltOutcome::CapExceeded,
        Step::NotFound if s.undetermined => FiltOutcome::CapExceeded,
        Step::NotFound => FiltOutcome::No,
    })
}

impl Search<'_> {
    /// Whether `d` is a sum of nonzero layer dimension vectors.
    fn decomposable(&mut self, d: &DimVector) -> bool {
        if d.is_zero() {
            return true;
        }
        if let Some(&r) = self.reachable.get(d) {
            return r;
        }
        let mut ok = false;
        for l in self.layers {
            if l.is_zero() {
                continue;
            }
            if let Some(rest) = d.checked_sub(l.dims()) {
                if self.decomposable(&rest) {
                    ok = true;
                    break;
                }
            }
        }
        self.reachable.insert(d.clone(), ok);
        ok
    }

    fn run(&mut self, x: &Representation) -> Result<Step, SubcatError> {
        if x.is_zero() {
            return Ok(Step::Found(Vec::new()));
        }
        if self.failed.contains(x) || !self.decomposable(x.dims()) {
            return Ok(Step::NotFound);
        }
        for (li, layer) in self.layers.iter().enumerate() {
            if layer.is_zero() {
                continue;
            }
            let Some(rest) = x.dims().checked_sub(layer.dims()) else {
                continue;
            };
            if !self.decomposable(&rest) {
                continue;
            }
            match subrep_count(x, layer.dims())?.and_then(|c| c.checked_add(self.work)) {
                Some(w) if w <= self.cap => self.work = w,
                _ => return Ok(Step::Abort),
            }
            for u in enumerate_subreps(x, layer.dims(), self.cap)? {
                let (sub, quot) = restrict_and_quotient(x, &u)?;
                match are_isomorphic(&sub, layer)? {
                    IsoVerdict::Isomorphic => {}
                    IsoVerdict::NotIsomorphic => continue,
                    IsoVerdict::ProbablyNotIsomorphic => {
                        self.undetermined = true;
                        continue;
                    }
                }
                match self.run(&quot)? {
                    Step::Found(mut chain) => {
                        chain.insert(
                            0,
                            FiltStep {
                                layer: li,
                                subrep: u,
                                remaining: rest.clone(),
                            },
                        );
                        return Ok(Step::Found(chain));
                    }
                    Step::Abort => return Ok(Step::Abort),
                    Step::NotFound => {}
                }
            }
        }
        self.failed.insert(x.clone());
        Ok(Step::NotFound)
    }
}
