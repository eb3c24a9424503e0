use rand::Rng;
use serde::Serialize;

use super::{random_matrix, Morphism, QuiverError, Representation};
use crate::exactfield::Matrix;

/// `0 → sub → middle → quotient → 0` with its two maps.
#[derive(Clone, Debug, Serialize)]
pub struct ShortExactSequence {
    pub sub: Representation,
    pub middle: Representation,
    pub quotient: Representation,
    pub inclusion: Morphism,
    pub projection: Morphism,
}

impl ShortExactSequence {
    /// Checks that both maps are morphisms, the inclusion is injective, the
    /// projection surjective, and the image of one is the kernel of the other.
    pub fn verify(&self) -> Result<(), QuiverError> {
        if !self.inclusion.is_morphism(&self.sub, &self.middle) {
            return Err(QuiverError::NotExact("inclusion is not a morphism".into()));
        }
        if !self.projection.is_morphism(&self.middle, &self.quotient) {
            return Err(QuiverError::NotExact("projection is not a morphism".into()));
        }
        let composite = self.inclusion.then(&self.projection)?;
        if !composite.is_zero() {
            return Err(QuiverError::NotExact("projection does not kill the image".into()));
        }
        for v in 0..self.middle.dims().len() {
            let (a, b, c) = (self.sub.dims()[v], self.middle.dims()[v], self.quotient.dims()[v]);
            if self.inclusion.maps[v].rank() != a {
                return Err(QuiverError::NotExact(format!("inclusion not injective at vertex {v}")));
            }
            if self.projection.maps[v].rank() != c {
                return Err(QuiverError::NotExact(format!("projection not surjective at vertex {v}")));
            }
            if a + c != b {
                return Err(QuiverError::NotExact(format!("dimensions do not add up at vertex {v}")));
            }
        }
        Ok(())
    }
}

/// The extension `B` of `m` by `n` with arrow matrices `[[N_α, Z_α], [0, M_α]]`,
/// together with the canonical inclusion `N ↣ B` and projection `B ↠ M`.
pub fn build_extension(n: &Representation, m: &Representation, cocycle: &[Matrix]) -> Result<ShortExactSequence, QuiverError> {
    n.check_compatible(m)?;
    let q = n.quiver();
    if cocycle.len() != q.arrows().len() {
        return Err(QuiverError::ArrowCount {
            expected: q.arrows().len(),
            found: cocycle.len(),
        });
    }
    let field = n.field();
    let (nd, md) = (n.dims(), m.dims());
    let mut maps = Vec::with_capacity(cocycle.len());
    for (ai, (a, z)) in q.arrows().iter().zip(cocycle).enumerate() {
        let expected = (nd[a.target], md[a.source]);
        if z.shape() != expected || z.field() != field {
            return Err(QuiverError::ArrowShape {
                arrow: ai,
                expected,
                found: z.shape(),
            });
        }
        let mut b = Matrix::zeros(field, nd[a.target] + md[a.target], nd[a.source] + md[a.source]);
        b.set_block(0, 0, n.map(ai));
        b.set_block(0, nd[a.source], z);
        b.set_block(nd[a.target], nd[a.source], m.map(ai));
        maps.push(b);
    }
    let middle = Representation::new(q.clone(), field, nd.add(md), maps)?;
    let nv = q.vertex_count();
    let inclusion = Morphism::new(
        (0..nv)
            .map(|v| {
                let mut i = Matrix::zeros(field, nd[v] + md[v], nd[v]);
                i.set_block(0, 0, &Matrix::identity(field, nd[v]));
                i
            })
            .collect(),
    );
    let projection = Morphism::new(
        (0..nv)
            .map(|v| {
                let mut p = Matrix::zeros(field, md[v], nd[v] + md[v]);
                p.set_block(0, nd[v], &Matrix::identity(field, md[v]));
                p
            })
            .collect(),
    );
    let ses = ShortExactSequence {
        sub: n.clone(),
        middle,
        quotient: m.clone(),
        inclusion,
        projection,
    };
    ses.verify()?;
    Ok(ses)
}

/// The coboundary `Z_α = N_α h_s − h_t M_α` of a family `h_i : M_i → N_i`.
/// Extensions built from it split.
pub fn coboundary(n: &Representation, m: &Representation, h: &[Matrix]) -> Result<Vec<Matrix>, QuiverError> {
    n.check_compatible(m)?;
    n.quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| Ok(n.map(ai).mul(&h[a.source])?.sub(&h[a.target].mul(m.map(ai))?)?))
        .collect()
}

/// A random cocycle of the right shapes for extending `m` by `n`.
pub fn random_cocycle<R: Rng + ?Sized>(n: &Representation, m: &Representation, rng: &mut R) -> Vec<Matrix> {
    n.quiver()
        .arrows()
        .iter()
        .map(|a| random_matrix(n.field(), n.dims()[a.target], m.dims()[a.source], rng))
        .collect()
}
