//! Hom and Ext¹ between representations of an acyclic quiver.
//!
//! Both are read off one block matrix
//!
//! ```text
//!     A : ⊕_i Hom(M_i, N_i) → ⊕_{α:i→j} Hom(M_i, N_j),   (φ_i) ↦ (φ_j M_α − N_α φ_i)_α
//! ```
//!
//! `Hom(M, N) = ker A` and, for a path algebra without relations,
//! `Ext¹(M, N) = coker A`.

use super::{euler_form, Morphism, QuiverError, Representation};
use crate::exactfield::{Matrix, Scalar};

/// The assembled Hom-defining linear map together with its variable layout.
///
/// Unknowns are ordered vertex by vertex; within a vertex the entries of
/// `φ_i` (a `dim N_i × dim M_i` matrix) are taken row-major.
#[derive(Clone, Debug)]
pub struct HomSystem {
    pub matrix: Matrix,
    offsets: Vec<usize>,
    source_dims: Vec<usize>,
    target_dims: Vec<usize>,
}

impl HomSystem {
    pub fn assemble(m: &Representation, n: &Representation) -> Result<Self, QuiverError> {
        m.check_compatible(n)?;
        let q = m.quiver();
        let field = m.field();
        let md = m.dims().as_slice();
        let nd = n.dims().as_slice();
        let mut offsets = Vec::with_capacity(q.vertex_count());
        let mut unknowns = 0;
        for v in 0..q.vertex_count() {
            offsets.push(unknowns);
            unknowns += nd[v] * md[v];
        }
        let equations: usize = q.arrows().iter().map(|a| nd[a.target] * md[a.source]).sum();
        let mut a_mat = Matrix::zeros(field, equations, unknowns);
        let var = |v: usize, r: usize, c: usize| offsets[v] + r * md[v] + c;

        let mut row0 = 0;
        for (ai, a) in q.arrows().iter().enumerate() {
            let (s, t) = (a.source, a.target);
            let m_a = m.map(ai);
            let n_a = n.map(ai);
            for r in 0..nd[t] {
                for c in 0..md[s] {
                    let row = row0 + r * md[s] + c;
                    // (φ_t M_α)[r, c] = Σ_k φ_t[r, k] M_α[k, c]
                    for k in 0..md[t] {
                        let coeff = m_a.get(k, c);
                        if !coeff.is_zero() {
                            let col = var(t, r, k);
                            let cur = a_mat.get(row, col).clone();
                            a_mat.set(row, col, &cur + coeff);
                        }
                    }
                    // −(N_α φ_s)[r, c] = −Σ_k N_α[r, k] φ_s[k, c]
                    for k in 0..nd[s] {
                        let coeff = n_a.get(r, k);
                        if !coeff.is_zero() {
                            let col = var(s, k, c);
                            let cur = a_mat.get(row, col).clone();
                            a_mat.set(row, col, &cur - coeff);
                        }
                    }
                }
            }
            row0 += nd[t] * md[s];
        }
        Ok(HomSystem {
            matrix: a_mat,
            offsets,
            source_dims: md.to_vec(),
            target_dims: nd.to_vec(),
        })
    }

    pub fn unknowns(&self) -> usize {
        self.matrix.cols()
    }

    pub fn equations(&self) -> usize {
        self.matrix.rows()
    }

    /// Unpacks a solution vector into per-vertex matrices.
    pub fn morphism_from_vector(&self, v: &[Scalar]) -> Morphism {
        let field = self.matrix.field();
        let maps = self
            .offsets
            .iter()
            .enumerate()
            .map(|(vert, &off)| {
                let (rows, cols) = (self.target_dims[vert], self.source_dims[vert]);
                let entries = (0..rows)
                    .map(|r| (0..cols).map(|c| v[off + r * cols + c].clone()).collect())
                    .collect();
                Matrix::from_rows(field, cols, entries).expect("shape from layout")
            })
            .collect();
        Morphism::new(maps)
    }
}

/// A canonical basis of `Hom(M, N)`, from the free columns of the RREF of the
/// assembled system.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<Morphism>, QuiverError> {
    let sys = HomSystem::assemble(m, n)?;
    Ok(sys
        .matrix
        .kernel_basis()
        .iter()
        .map(|v| sys.morphism_from_vector(v))
        .collect())
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize, QuiverError> {
    let sys = HomSystem::assemble(m, n)?;
    Ok(sys.unknowns() - sys.matrix.rank())
}

/// `dim Ext¹(M, N)` for a path algebra without relations.
///
/// Computed as the cokernel dimension (using the rank of the transpose) and
/// cross-checked against `dim Hom(M, N) − ⟨dim M, dim N⟩` (using the kernel of
/// the untransposed map). A disagreement is reported as an error.
pub fn ext1_dim(m: &Representation, n: &Representation) -> Result<usize, QuiverError> {
    m.quiver().require_acyclic()?;
    let sys = HomSystem::assemble(m, n)?;
    let cokernel = sys.equations() - sys.matrix.transpose().rank();
    let hom = sys.matrix.kernel_basis().len() as i64;
    let euler = euler_form(m.quiver(), m.dims(), n.dims())?;
    if hom - euler != cokernel as i64 {
        return Err(QuiverError::RouteMismatch {
            hom: hom as usize,
            cokernel,
            euler,
        });
    }
    Ok(cokernel)
}

/// Projective dimension over a hereditary path algebra: 0 when
/// `Ext¹(M, S_i) = 0` for every simple `S_i`, otherwise 1.
pub fn pdim(m: &Representation) -> Result<u8, QuiverError> {
    m.quiver().require_acyclic()?;
    if m.is_zero() {
        return Err(QuiverError::ZeroRepresentation);
    }
    for i in 0..m.quiver().vertex_count() {
        let s = Representation::simple(m.quiver().clone(), m.field(), i)?;
        if ext1_dim(m, &s)? > 0 {
            return Ok(1);
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::exactfield::FieldSpec;
    use crate::quiverrep::{DimVector, Quiver};

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    #[test]
    fn identity_is_an_endomorphism() {
        let quiver = Arc::new(Quiver::kronecker());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = Representation::random(quiver, q(), DimVector::new(vec![2, 2]), &mut rng).unwrap();
        let basis = hom_basis(&m, &m).unwrap();
        assert!(!basis.is_empty());
        for phi in &basis {
            assert!(phi.is_morphism(&m, &m));
        }
        let id = Morphism::new(vec![Matrix::identity(q(), 2), Matrix::identity(q(), 2)]);
        let sys = HomSystem::assemble(&m, &m).unwrap();
        let flat: Vec<Scalar> = id.maps.iter().flat_map(|mm| mm.entries().to_vec()).collect();
        assert!(sys.matrix.apply(&flat).unwrap().iter().all(Scalar::is_zero));
    }

    #[test]
    fn hom_dim_examples() {
        let quiver = Arc::new(Quiver::linear(3));
        let zero = Representation::zero(quiver.clone(), q());
        let s1 = Representation::simple(quiver.clone(), q(), 1).unwrap();
        let s0 = Representation::simple(quiver.clone(), q(), 0).unwrap();
        let s2 = Representation::simple(quiver.clone(), q(), 2).unwrap();
        assert_eq!(hom_dim(&zero, &s1).unwrap(), 0);
        assert_eq!(hom_dim(&s1, &s1).unwrap(), 1);
        assert_eq!(hom_dim(&s0, &s2).unwrap(), 0);
    }

    #[test]
    fn ext1_examples() {
        let k = Arc::new(Quiver::kronecker());
        let s_source = Representation::simple(k.clone(), q(), 0).unwrap();
        let s_sink = Representation::simple(k.clone(), q(), 1).unwrap();
        assert_eq!(ext1_dim(&s_source, &s_sink).unwrap(), 2);
        assert_eq!(ext1_dim(&s_sink, &s_source).unwrap(), 0);

        let quiver = Arc::new(Quiver::from_edges(3, &[(0, 1)]).unwrap());
        let s0 = Representation::simple(quiver.clone(), q(), 0).unwrap();
        let s2 = Representation::simple(quiver.clone(), q(), 2).unwrap();
        assert_eq!(ext1_dim(&s0, &s2).unwrap(), 0);
        assert_eq!(ext1_dim(&s2, &s0).unwrap(), 0);
    }

    #[test]
    fn projectives_and_injectives_have_no_ext() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for quiver in [Quiver::kronecker(), Quiver::linear(3), Quiver::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()] {
            let quiver = Arc::new(quiver);
            let nv = quiver.vertex_count();
            for i in 0..nv {
                let p = Representation::projective(quiver.clone(), q(), i).unwrap();
                let inj = Representation::injective(quiver.clone(), q(), i).unwrap();
                assert_eq!(pdim(&p).unwrap(), 0);
                for _ in 0..5 {
                    let dims = DimVector::new((0..nv).map(|_| rand::Rng::gen_range(&mut rng, 0..3)).collect());
                    let n = Representation::random(quiver.clone(), q(), dims.clone(), &mut rng).unwrap();
                    assert_eq!(ext1_dim(&p, &n).unwrap(), 0);
                    assert_eq!(ext1_dim(&n, &inj).unwrap(), 0);
                    // Hom(P_i, N) ≅ N_i and Hom(N, I_i) ≅ D N_i
                    assert_eq!(hom_dim(&p, &n).unwrap(), dims[i]);
                    assert_eq!(hom_dim(&n, &inj).unwrap(), dims[i]);
                }
            }
        }
    }

    #[test]
    fn pdim_examples() {
        let a2 = Arc::new(Quiver::linear(2));
        let s_source = Representation::simple(a2.clone(), q(), 0).unwrap();
        let s_sink = Representation::simple(a2.clone(), q(), 1).unwrap();
        assert_eq!(pdim(&s_source).unwrap(), 1);
        assert_eq!(pdim(&s_sink).unwrap(), 0);

        let arrowless = Arc::new(Quiver::from_edges(2, &[]).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = Representation::random(arrowless.clone(), q(), DimVector::new(vec![2, 1]), &mut rng).unwrap();
        assert_eq!(pdim(&m).unwrap(), 0);
        assert_eq!(pdim(&Representation::zero(arrowless, q())), Err(QuiverError::ZeroRepresentation));
    }

    #[test]
    fn cyclic_quivers_rejected_for_ext() {
        let cyc = Arc::new(Quiver::from_edges(1, &[(0, 0)]).unwrap());
        let s = Representation::simple(cyc, q(), 0).unwrap();
        assert_eq!(hom_dim(&s, &s).unwrap(), 1);
        assert_eq!(ext1_dim(&s, &s), Err(QuiverError::NotAcyclic));
    }

    #[test]
    fn hom_is_additive_in_the_target() {
        let f = FieldSpec::prime(3).unwrap();
        let quiver = Arc::new(Quiver::kronecker());
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..30 {
            let dim = |rng: &mut ChaCha8Rng| DimVector::new(vec![rand::Rng::gen_range(rng, 0..3), rand::Rng::gen_range(rng, 0..3)]);
            let x = Representation::random(quiver.clone(), f, dim(&mut rng), &mut rng).unwrap();
            let m = Representation::random(quiver.clone(), f, dim(&mut rng), &mut rng).unwrap();
            let n = Representation::random(quiver.clone(), f, dim(&mut rng), &mut rng).unwrap();
            let sum = m.direct_sum(&n).unwrap();
            assert_eq!(hom_dim(&x, &sum).unwrap(), hom_dim(&x, &m).unwrap() + hom_dim(&x, &n).unwrap());
            assert_eq!(hom_dim(&sum, &x).unwrap(), hom_dim(&m, &x).unwrap() + hom_dim(&n, &x).unwrap());
        }
    }
}
