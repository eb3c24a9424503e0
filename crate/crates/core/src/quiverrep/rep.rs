use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use super::{DimVector, Quiver, QuiverError};
use crate::exactfield::{FieldKind, FieldSpec, Matrix, Scalar};

/// A finite-dimensional representation: one matrix of shape
/// `d_{target} × d_{source}` per arrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Representation {
    #[serde(skip)]
    quiver: Arc<Quiver>,
    field: FieldSpec,
    dims: DimVector,
    maps: Vec<Matrix>,
}

impl Representation {
    pub fn new(quiver: Arc<Quiver>, field: FieldSpec, dims: DimVector, maps: Vec<Matrix>) -> Result<Self, QuiverError> {
        if dims.len() != quiver.vertex_count() {
            return Err(QuiverError::DimVectorLength {
                expected: quiver.vertex_count(),
                found: dims.len(),
            });
        }
        if maps.len() != quiver.arrows().len() {
            return Err(QuiverError::ArrowCount {
                expected: quiver.arrows().len(),
                found: maps.len(),
            });
        }
        for (i, (a, m)) in quiver.arrows().iter().zip(&maps).enumerate() {
            if m.field() != field {
                return Err(QuiverError::FieldMismatch {
                    left: field,
                    right: m.field(),
                });
            }
            let expected = (dims[a.target], dims[a.source]);
            if m.shape() != expected {
                return Err(QuiverError::ArrowShape {
                    arrow: i,
                    expected,
                    found: m.shape(),
                });
            }
        }
        Ok(Representation {
            quiver,
            field,
            dims,
            maps,
        })
    }

    /// The representation with the given dimensions and all maps zero.
    pub fn zero_maps(quiver: Arc<Quiver>, field: FieldSpec, dims: DimVector) -> Result<Self, QuiverError> {
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(field, dims[a.target], dims[a.source]))
            .collect();
        Self::new(quiver, field, dims, maps)
    }

    pub fn zero(quiver: Arc<Quiver>, field: FieldSpec) -> Self {
        let dims = DimVector::zero(quiver.vertex_count());
        Self::zero_maps(quiver, field, dims).expect("zero representation is valid")
    }

    /// The simple representation `S_i`.
    pub fn simple(quiver: Arc<Quiver>, field: FieldSpec, i: usize) -> Result<Self, QuiverError> {
        if i >= quiver.vertex_count() {
            return Err(QuiverError::VertexOutOfRange {
                vertex: i,
                count: quiver.vertex_count(),
            });
        }
        let dims = DimVector::unit(quiver.vertex_count(), i);
        Self::zero_maps(quiver, field, dims)
    }

    /// The indecomposable projective `P_i`, with basis at vertex `j` the paths
    /// `i ⇝ j`. Arrows act by post-composition.
    pub fn projective(quiver: Arc<Quiver>, field: FieldSpec, i: usize) -> Result<Self, QuiverError> {
        if i >= quiver.vertex_count() {
            return Err(QuiverError::VertexOutOfRange {
                vertex: i,
                count: quiver.vertex_count(),
            });
        }
        let paths = quiver.paths_from(i)?;
        let n = quiver.vertex_count();
        let basis: Vec<Vec<Vec<usize>>> = (0..n)
            .map(|j| paths.iter().filter(|(_, e)| *e == j).map(|(p, _)| p.clone()).collect())
            .collect();
        let dims = DimVector::new(basis.iter().map(Vec::len).collect());
        let maps = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Matrix::zeros(field, dims[a.target], dims[a.source]);
                for (col, p) in basis[a.source].iter().enumerate() {
                    let mut extended = p.clone();
                    extended.push(ai);
                    let row = basis[a.target].iter().position(|q| *q == extended).expect("extended path exists");
                    m.set(row, col, field.one());
                }
                m
            })
            .collect();
        Self::new(quiver, field, dims, maps)
    }

    /// The indecomposable injective `I_i`, with basis at vertex `j` dual to
    /// the paths `j ⇝ i`. An arrow `α` sends `p*` to `q*` when `p = q ∘ α`.
    pub fn injective(quiver: Arc<Quiver>, field: FieldSpec, i: usize) -> Result<Self, QuiverError> {
        if i >= quiver.vertex_count() {
            return Err(QuiverError::VertexOutOfRange {
                vertex: i,
                count: quiver.vertex_count(),
            });
        }
        let n = quiver.vertex_count();
        let mut basis: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n);
        for j in 0..n {
            basis.push(
                quiver
                    .paths_from(j)?
                    .into_iter()
                    .filter(|(_, e)| *e == i)
                    .map(|(p, _)| p)
                    .collect(),
            );
        }
        let dims = DimVector::new(basis.iter().map(Vec::len).collect());
        let maps = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Matrix::zeros(field, dims[a.target], dims[a.source]);
                for (col, p) in basis[a.source].iter().enumerate() {
                    if p.first() == Some(&ai) {
                        let rest = &p[1..];
                        let row = basis[a.target].iter().position(|q| q == rest).expect("tail path exists");
                        m.set(row, col, field.one());
                    }
                }
                m
            })
            .collect();
        Self::new(quiver, field, dims, maps)
    }

    /// A representation with uniformly random entries (over 𝔽_p) or random
    /// integers in `[-3, 3]` (over ℚ).
    pub fn random<R: Rng + ?Sized>(quiver: Arc<Quiver>, field: FieldSpec, dims: DimVector, rng: &mut R) -> Result<Self, QuiverError> {
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| random_matrix(field, dims[a.target], dims[a.source], rng))
            .collect();
        Self::new(quiver, field, dims, maps)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_zero()
    }

    pub fn check_compatible(&self, other: &Representation) -> Result<(), QuiverError> {
        if self.quiver != other.quiver {
            return Err(QuiverError::QuiverMismatch);
        }
        if self.field != other.field {
            return Err(QuiverError::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        Ok(())
    }

    /// Block-diagonal direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Representation) -> Result<Representation, QuiverError> {
        self.check_compatible(other)?;
        let dims = self.dims.add(&other.dims);
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(self.field, a.rows() + b.rows(), a.cols() + b.cols());
                m.set_block(0, 0, a);
                m.set_block(a.rows(), a.cols(), b);
                m
            })
            .collect();
        Representation::new(self.quiver.clone(), self.field, dims, maps)
    }

    /// Base change `g·M = (g_t M_α g_s^{-1})_α` by invertible `g_i`.
    pub fn conjugate(&self, g: &[Matrix]) -> Result<Representation, QuiverError> {
        if g.len() != self.quiver.vertex_count() {
            return Err(QuiverError::DimVectorLength {
                expected: self.quiver.vertex_count(),
                found: g.len(),
            });
        }
        let inverses = g
            .iter()
            .enumerate()
            .map(|(v, gi)| {
                if gi.shape() != (self.dims[v], self.dims[v]) {
                    return Err(QuiverError::NotInvertible { vertex: v });
                }
                invert(gi).ok_or(QuiverError::NotInvertible { vertex: v })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| Ok(g[a.target].mul(m)?.mul(&inverses[a.source])?))
            .collect::<Result<Vec<_>, QuiverError>>()?;
        Representation::new(self.quiver.clone(), self.field, self.dims.clone(), maps)
    }

    /// The pencil member `self + t·direction`, for two representations of the
    /// same shape.
    pub fn pencil_at(&self, direction: &Representation, t: &Scalar) -> Result<Representation, QuiverError> {
        self.check_compatible(direction)?;
        if self.dims != direction.dims {
            return Err(QuiverError::DimensionMismatch {
                left: self.dims.clone(),
                right: direction.dims.clone(),
            });
        }
        let maps = self
            .maps
            .iter()
            .zip(&direction.maps)
            .map(|(a, b)| a.add(&b.scaled(t)))
            .collect::<Result<Vec<_>, _>>()?;
        Representation::new(self.quiver.clone(), self.field, self.dims.clone(), maps)
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dim {} over {}:", self.dims, self.field)?;
        for (a, m) in self.quiver.arrows().iter().zip(&self.maps) {
            write!(f, " {}={}", a.label, m)?;
        }
        Ok(())
    }
}

/// A morphism of representations: one matrix `φ_i : M_i → N_i` per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Morphism {
    pub maps: Vec<Matrix>,
}

impl Morphism {
    pub fn new(maps: Vec<Matrix>) -> Self {
        Morphism { maps }
    }

    /// Whether `φ_t M_α = N_α φ_s` holds for every arrow.
    pub fn is_morphism(&self, from: &Representation, to: &Representation) -> bool {
        let q = from.quiver();
        if self.maps.len() != q.vertex_count() {
            return false;
        }
        for v in 0..q.vertex_count() {
            if self.maps[v].shape() != (to.dims()[v], from.dims()[v]) {
                return false;
            }
        }
        q.arrows().iter().enumerate().all(|(i, a)| {
            let left = self.maps[a.target].mul(from.map(i));
            let right = to.map(i).mul(&self.maps[a.source]);
            matches!((left, right), (Ok(l), Ok(r)) if l == r)
        })
    }

    /// Invertible at every vertex.
    pub fn is_isomorphism(&self) -> bool {
        self.maps.iter().all(Matrix::is_invertible)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Morphism) -> Result<Morphism, QuiverError> {
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| b.mul(a))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Morphism { maps })
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    /// Linear combination `Σ c_k φ_k` of morphisms with identical shapes.
    pub fn combination(parts: &[Morphism], coeffs: &[Scalar]) -> Option<Morphism> {
        let first = parts.first()?;
        let mut maps: Vec<Matrix> = first
            .maps
            .iter()
            .map(|m| Matrix::zeros(m.field(), m.rows(), m.cols()))
            .collect();
        for (phi, c) in parts.iter().zip(coeffs) {
            for (acc, m) in maps.iter_mut().zip(&phi.maps) {
                *acc = acc.add(&m.scaled(c)).ok()?;
            }
        }
        Some(Morphism { maps })
    }
}

/// A uniformly random element of 𝔽_p, or a random integer in `[-bound, bound]` over ℚ.
pub fn random_scalar<R: Rng + ?Sized>(field: FieldSpec, bound: i64, rng: &mut R) -> Scalar {
    match field.kind() {
        FieldKind::PrimeField(p) => field.from_i64(rng.gen_range(0..p as i64)),
        FieldKind::Rationals => field.from_i64(rng.gen_range(-bound..=bound)),
    }
}

pub fn random_matrix<R: Rng + ?Sized>(field: FieldSpec, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let entries: Vec<Vec<Scalar>> = (0..rows)
        .map(|_| (0..cols).map(|_| random_scalar(field, 3, rng)).collect())
        .collect();
    Matrix::from_rows(field, cols, entries).expect("entries from one field")
}

/// A random invertible matrix, by rejection sampling.
pub fn random_invertible<R: Rng + ?Sized>(field: FieldSpec, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = random_matrix(field, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Inverse of a square matrix, via rref of `[A | I]`.
pub fn invert(m: &Matrix) -> Option<Matrix> {
    if m.rows() != m.cols() {
        return None;
    }
    let n = m.rows();
    let aug = m.hstack(&Matrix::identity(m.field(), n)).ok()?;
    let r = aug.rref();
    if r.pivots.len() < n || r.pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
        return None;
    }
    Some(r.matrix.submatrix(0..n, n..2 * n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shape_validation() {
        let q = Arc::new(Quiver::kronecker());
        let f = FieldSpec::RATIONALS;
        let bad = Representation::new(
            q.clone(),
            f,
            DimVector::new(vec![1, 1]),
            vec![Matrix::zeros(f, 1, 1), Matrix::zeros(f, 2, 1)],
        );
        assert!(matches!(bad, Err(QuiverError::ArrowShape { arrow: 1, .. })));
        let bad = Representation::new(q.clone(), f, DimVector::new(vec![1, 1]), vec![Matrix::zeros(f, 1, 1)]);
        assert!(matches!(bad, Err(QuiverError::ArrowCount { .. })));
        let f3 = FieldSpec::prime(3).unwrap();
        let bad = Representation::new(
            q,
            f,
            DimVector::new(vec![1, 1]),
            vec![Matrix::zeros(f, 1, 1), Matrix::zeros(f3, 1, 1)],
        );
        assert!(matches!(bad, Err(QuiverError::FieldMismatch { .. })));
    }

    #[test]
    fn projectives_and_injectives_of_a3() {
        let q = Arc::new(Quiver::linear(3));
        let f = FieldSpec::RATIONALS;
        let p0 = Representation::projective(q.clone(), f, 0).unwrap();
        assert_eq!(p0.dims().as_slice(), &[1, 1, 1]);
        assert!(p0.maps().iter().all(|m| m.rank() == 1));
        let i0 = Representation::injective(q.clone(), f, 0).unwrap();
        assert_eq!(i0.dims().as_slice(), &[1, 0, 0]);
        let i2 = Representation::injective(q.clone(), f, 2).unwrap();
        assert_eq!(i2.dims().as_slice(), &[1, 1, 1]);
        let k = Arc::new(Quiver::kronecker());
        assert_eq!(Representation::projective(k.clone(), f, 0).unwrap().dims().as_slice(), &[1, 2]);
        assert_eq!(Representation::injective(k, f, 1).unwrap().dims().as_slice(), &[2, 1]);
    }

    #[test]
    fn direct_sum_adds_dimensions() {
        let q = Arc::new(Quiver::kronecker());
        let f = FieldSpec::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = Representation::random(q.clone(), f, DimVector::new(vec![2, 1]), &mut rng).unwrap();
        let n = Representation::random(q.clone(), f, DimVector::new(vec![1, 3]), &mut rng).unwrap();
        let s = m.direct_sum(&n).unwrap();
        assert_eq!(s.dims().as_slice(), &[3, 4]);
        assert_eq!(m.direct_sum(&Representation::zero(q, f)).unwrap(), m);
    }

    #[test]
    fn conjugation_round_trip() {
        let q = Arc::new(Quiver::kronecker());
        let f = FieldSpec::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = Representation::random(q, f, DimVector::new(vec![2, 3]), &mut rng).unwrap();
        let g: Vec<_> = [2, 3].iter().map(|&n| random_invertible(f, n, &mut rng)).collect();
        let back: Vec<_> = g.iter().map(|gi| invert(gi).unwrap()).collect();
        assert_eq!(m.conjugate(&g).unwrap().conjugate(&back).unwrap(), m);
        let g_morphism = Morphism::new(g);
        assert!(g_morphism.is_morphism(&m, &m.conjugate(&g_morphism.maps).unwrap()));
    }
}
