use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::{enumerate_subspaces, gaussian_binomial, DimVector, Morphism, QuiverError, Representation, Subspace};
use crate::exactfield::{Matrix, Scalar};

/// A tuple of subspaces `(U_i)`, one per vertex, each in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SubrepPoint {
    subspaces: Vec<Subspace>,
}

impl SubrepPoint {
    /// Wraps the subspaces after checking they form a subrepresentation of `m`.
    pub fn new(m: &Representation, subspaces: Vec<Subspace>) -> Result<Self, QuiverError> {
        let q = m.quiver();
        if subspaces.len() != q.vertex_count() {
            return Err(QuiverError::DimVectorLength {
                expected: q.vertex_count(),
                found: subspaces.len(),
            });
        }
        for (v, s) in subspaces.iter().enumerate() {
            if s.ambient() != m.dims()[v] {
                return Err(QuiverError::SubDimension {
                    sub: s.dim(),
                    ambient: m.dims()[v],
                });
            }
            if s.field() != m.field() {
                return Err(QuiverError::FieldMismatch {
                    left: m.field(),
                    right: s.field(),
                });
            }
        }
        let p = SubrepPoint { subspaces };
        for arrow in 0..q.arrows().len() {
            if !p.arrow_is_stable(m, arrow) {
                return Err(QuiverError::NotStable { arrow });
            }
        }
        Ok(p)
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn subspace(&self, v: usize) -> &Subspace {
        &self.subspaces[v]
    }

    pub fn dims(&self) -> DimVector {
        DimVector::new(self.subspaces.iter().map(Subspace::dim).collect())
    }

    fn arrow_is_stable(&self, m: &Representation, arrow: usize) -> bool {
        let a = m.quiver().arrow(arrow);
        arrow_is_stable(m.map(arrow), &self.subspaces[a.source], &self.subspaces[a.target])
    }

    /// The inclusion `M|_U ↣ M`: at each vertex, the basis vectors as columns.
    pub fn inclusion(&self) -> Morphism {
        Morphism::new(self.subspaces.iter().map(|s| s.basis().transpose()).collect())
    }

    /// The projection `M ↠ M/U` onto the canonical complement coordinates.
    pub fn projection(&self) -> Morphism {
        Morphism::new(self.subspaces.iter().map(Subspace::quotient_matrix).collect())
    }
}

fn columns_to_matrix(field: crate::exactfield::FieldSpec, rows: usize, cols: Vec<Vec<Scalar>>) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols.len());
    for (c, col) in cols.into_iter().enumerate() {
        for (r, x) in col.into_iter().enumerate() {
            m.set(r, c, x);
        }
    }
    m
}

fn arrow_is_stable(map: &Matrix, source: &Subspace, target: &Subspace) -> bool {
    source.basis().row_vectors().iter().all(|u| {
        let image = map.apply(u).expect("shape checked");
        target.contains(&image)
    })
}

/// The size of the candidate space `∏_i [d_i choose e_i]_q`, or `None` on overflow.
pub fn subrep_count(m: &Representation, e: &DimVector) -> Result<Option<u128>, QuiverError> {
    let order = m.field().order().ok_or(QuiverError::InfiniteField)?;
    check_dims(m, e)?;
    let mut total: u128 = 1;
    for v in 0..e.len() {
        match gaussian_binomial(m.dims()[v], e[v], order).and_then(|g| total.checked_mul(g)) {
            Some(t) => total = t,
            None => return Ok(None),
        }
    }
    Ok(Some(total))
}

fn check_dims(m: &Representation, e: &DimVector) -> Result<(), QuiverError> {
    if e.len() != m.dims().len() {
        return Err(QuiverError::DimVectorLength {
            expected: m.dims().len(),
            found: e.len(),
        });
    }
    for v in 0..e.len() {
        if e[v] > m.dims()[v] {
            return Err(QuiverError::SubDimension {
                sub: e[v],
                ambient: m.dims()[v],
            });
        }
    }
    Ok(())
}

/// All subrepresentations of `m` with dimension vector `e`, over a finite
/// field, sorted canonically.
///
/// On an acyclic quiver, vertices are assigned sinks first. Each `U_v` is then
/// drawn from the subspaces of `∩_{α:v→t} M_α^{-1}(U_t)`, so every candidate is
/// stable by construction. On a quiver with cycles, all tuples are tried and
/// each arrow is checked once both endpoints are assigned.
pub fn enumerate_subreps(m: &Representation, e: &DimVector, cap: u128) -> Result<Vec<SubrepPoint>, QuiverError> {
    let needed = subrep_count(m, e)?;
    match needed {
        Some(n) if n <= cap => {}
        _ => return Err(QuiverError::CapExceeded { needed, cap }),
    }
    let q = m.quiver();
    let nv = q.vertex_count();
    let mut out = Vec::new();
    let mut chosen: Vec<Option<Subspace>> = vec![None; nv];
    if let Some(mut order) = q.topological_order() {
        order.reverse();
        let mut search = Preimages {
            m,
            e,
            order: &order,
            cap,
            cache: HashMap::new(),
        };
        search.run(0, &mut chosen, &mut out)?;
    } else {
        let order: Vec<usize> = (0..nv).collect();
        let mut checks: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (ai, a) in q.arrows().iter().enumerate() {
            checks[a.source.max(a.target)].push(ai);
        }
        let candidates = order
            .iter()
            .map(|&v| enumerate_subspaces(m.field(), m.dims()[v], e[v], cap))
            .collect::<Result<Vec<_>, _>>()?;
        dfs(m, &order, &checks, &candidates, 0, &mut chosen, &mut out);
    }
    out.sort();
    Ok(out)
}

struct Preimages<'a> {
    m: &'a Representation,
    e: &'a DimVector,
    order: &'a [usize],
    cap: u128,
    cache: HashMap<(usize, usize), Arc<Vec<Subspace>>>,
}

impl Preimages<'_> {
    fn run(&mut self, depth: usize, chosen: &mut Vec<Option<Subspace>>, out: &mut Vec<SubrepPoint>) -> Result<(), QuiverError> {
        if depth == self.order.len() {
            out.push(SubrepPoint {
                subspaces: chosen.iter().map(|s| s.clone().expect("all assigned")).collect(),
            });
            return Ok(());
        }
        let field = self.m.field();
        let v = self.order[depth];
        let d = self.m.dims()[v];
        let mut rows = Vec::new();
        for (ai, a) in self.m.quiver().arrows().iter().enumerate() {
            if a.source == v {
                let target = chosen[a.target].as_ref().expect("targets assigned first");
                rows.extend(target.quotient_matrix().mul(self.m.map(ai))?.row_vectors());
            }
        }
        let allowed = Matrix::from_rows(field, d, rows)?.kernel_basis();
        let k = allowed.len();
        let ev = self.e[v];
        if k < ev {
            return Ok(());
        }
        let inner = match self.cache.get(&(k, ev)) {
            Some(c) => c.clone(),
            None => {
                let c = Arc::new(enumerate_subspaces(field, k, ev, self.cap)?);
                self.cache.insert((k, ev), c.clone());
                c
            }
        };
        let embed = Matrix::from_rows(field, d, allowed)?;
        for s in inner.iter() {
            let vectors = s.basis().mul(&embed)?.row_vectors();
            chosen[v] = Some(Subspace::span(field, d, &vectors)?);
            self.run(depth + 1, chosen, out)?;
        }
        chosen[v] = None;
        Ok(())
    }
}

fn dfs(
    m: &Representation,
    order: &[usize],
    checks: &[Vec<usize>],
    candidates: &[Vec<Subspace>],
    depth: usize,
    chosen: &mut Vec<Option<Subspace>>,
    out: &mut Vec<SubrepPoint>,
) {
    if depth == order.len() {
        out.push(SubrepPoint {
            subspaces: chosen.iter().map(|s| s.clone().expect("all assigned")).collect(),
        });
        return;
    }
    let v = order[depth];
    for cand in &candidates[depth] {
        chosen[v] = Some(cand.clone());
        let ok = checks[depth].iter().all(|&ai| {
            let a = m.quiver().arrow(ai);
            let s = chosen[a.source].as_ref().expect("assigned");
            let t = chosen[a.target].as_ref().expect("assigned");
            arrow_is_stable(m.map(ai), s, t)
        });
        if ok {
            dfs(m, order, checks, candidates, depth + 1, chosen, out);
        }
    }
    chosen[v] = None;
}

/// The induced representations on `U` (in its canonical basis) and on `M/U`
/// (in the canonical complement basis).
pub fn restrict_and_quotient(m: &Representation, u: &SubrepPoint) -> Result<(Representation, Representation), QuiverError> {
    let checked = SubrepPoint::new(m, u.subspaces.clone())?;
    let q = m.quiver();
    let field = m.field();
    let mut sub_maps = Vec::with_capacity(q.arrows().len());
    let mut quot_maps = Vec::with_capacity(q.arrows().len());
    for (ai, a) in q.arrows().iter().enumerate() {
        let (us, ut) = (checked.subspace(a.source), checked.subspace(a.target));
        let map = m.map(ai);
        let sub_cols = us
            .basis()
            .row_vectors()
            .iter()
            .map(|b| ut.coordinates(&map.apply(b).expect("shape")).expect("stable"))
            .collect();
        sub_maps.push(columns_to_matrix(field, ut.dim(), sub_cols));
        let quot_cols = us
            .complement_positions()
            .into_iter()
            .map(|c| ut.quotient_coordinates(&map.column(c)))
            .collect();
        quot_maps.push(columns_to_matrix(field, ut.ambient() - ut.dim(), quot_cols));
    }
    let e = checked.dims();
    let rest = m.dims().checked_sub(&e).expect("e ≤ d");
    Ok((
        Representation::new(q.clone(), field, e, sub_maps)?,
        Representation::new(q.clone(), field, rest, quot_maps)?,
    ))
}
