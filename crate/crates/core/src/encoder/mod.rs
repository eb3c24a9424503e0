//! Encoding a quasi-projective variety as a quiver Grassmannian.
//!
//! For equations `f_1..f_k` and inequations `h_1..h_k`, all of degree `d`, in
//! `T_0..T_n`, the quiver has three vertices `0, 1, 2` with `k` arrows
//! `1 → 0` and `n + 1` arrows `1 → 2`. Two representations `V` and `W` share
//! the vector spaces `(𝕂, 𝕂^{M_{n,d}}, 𝕂^{M_{n,d−1}})` and the maps
//! `g_j : v_m ↦ v_{m − e_j}`; on the arrows `1 → 0` they carry the
//! coefficient rows of the `f_i` and of the `h_i` respectively.

mod verify;


pub use verify::{
    verify_bijection, verify_lemma_hom, verify_quasi_projective, BijectionReport, LemmaReport, Mismatch, PointHom, QuasiReport,
    TruthTable,
};

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::exactfield::{FieldSpec, Matrix};
use crate::polyring::{normalize_degrees, MonomialBasis, NormalizeOptions, NormalizedSystem, PolyError, Polynomial, ProjPoint};
use crate::quiverrep::{Arrow, DimVector, Quiver, QuiverError, Representation, SubrepPoint, Subspace};
use crate::subcat::SubcatError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncoderError {
    #[error("point {point} is not on the variety: equation {equation} does not vanish")]
    NotOnVariety { point: String, equation: usize },
    #[error("expected a subrepresentation of dimension {expected}, found {found}")]
    WrongDims { expected: DimVector, found: DimVector },
    #[error("polynomials are over {found}, instance requested over {expected}")]
    FieldMismatch { expected: FieldSpec, found: FieldSpec },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Subcat(#[from] SubcatError),
}

/// The quiver, the two representations `V` and `W`, and the data they were
/// built from.
#[derive(Clone, Debug, Serialize)]
pub struct EncodedInstance {
    pub field: FieldSpec,
    pub n: usize,
    pub k: usize,
    pub degree: u32,
    #[serde(skip)]
    pub basis: MonomialBasis,
    #[serde(skip)]
    pub lower_basis: MonomialBasis,
    #[serde(skip)]
    pub quiver: Arc<Quiver>,
    #[serde(skip)]
    pub v: Representation,
    #[serde(skip)]
    pub w: Representation,
    #[serde(skip)]
    pub system: NormalizedSystem,
    /// The polynomials as given, before degree normalization.
    #[serde(skip)]
    pub equations: Vec<Polynomial>,
    #[serde(skip)]
    pub inequations: Vec<Polynomial>,
}

/// `(0, 1, 1)`, the dimension vector whose Grassmannian recovers the variety.
pub fn point_dims() -> DimVector {
    DimVector::new(vec![0, 1, 1])
}

pub fn encode(fs: &[Polynomial], hs: &[Polynomial], field: FieldSpec) -> Result<EncodedInstance, EncoderError> {
    encode_with(fs, hs, field, NormalizeOptions::default())
}

pub fn encode_with(fs: &[Polynomial], hs: &[Polynomial], field: FieldSpec, opts: NormalizeOptions) -> Result<EncodedInstance, EncoderError> {
    if let Some(p) = fs.iter().chain(hs).find(|p| p.field() != field) {
        return Err(EncoderError::FieldMismatch {
            expected: field,
            found: p.field(),
        });
    }
    let system = normalize_degrees(fs, hs, opts)?;
    let n = system.fs[0].n();
    let k = system.fs.len();
    let degree = system.degree;
    let basis = MonomialBasis::new(n, degree);
    let lower_basis = MonomialBasis::new(n, degree - 1);

    let mut arrows = Vec::with_capacity(k + n + 1);
    for i in 0..k {
        arrows.push(Arrow {
            source: 1,
            target: 0,
            label: format!("f{}", i + 1),
        });
    }
    for j in 0..=n {
        arrows.push(Arrow {
            source: 1,
            target: 2,
            label: format!("g{j}"),
        });
    }
    let quiver = Arc::new(Quiver::new(3, arrows)?);

    let g: Vec<Matrix> = (0..=n)
        .map(|j| {
            let mut m = Matrix::zeros(field, lower_basis.len(), basis.len());
            for (col, mono) in basis.monomials().iter().enumerate() {
                if let Some(lower) = mono.lower(j) {
                    let row = lower_basis.index_of(&lower).expect("degree d−1 monomial");
                    m.set(row, col, field.one());
                }
            }
            m
        })
        .collect();
    let coefficient_rows = |ps: &[Polynomial]| -> Result<Vec<Matrix>, EncoderError> {
        ps.iter()
            .map(|p| Ok(Matrix::row_vector(field, &p.coefficient_vector(&basis)?).map_err(QuiverError::from)?))
            .collect()
    };
    let dims = DimVector::new(vec![1, basis.len(), lower_basis.len()]);
    let mut v_maps = coefficient_rows(&system.fs)?;
    v_maps.extend(g.iter().cloned());
    let mut w_maps = coefficient_rows(&system.hs)?;
    w_maps.extend(g);
    let v = Representation::new(quiver.clone(), field, dims.clone(), v_maps)?;
    let w = Representation::new(quiver.clone(), field, dims, w_maps)?;

    Ok(EncodedInstance {
        field,
        n,
        k,
        degree,
        basis,
        lower_basis,
        quiver,
        v,
        w,
        system,
        equations: fs.to_vec(),
        inequations: hs.to_vec(),
    })
}

impl EncodedInstance {
    /// Arrow index of `f_i` (0-based `i`).
    pub fn f_arrow(&self, i: usize) -> usize {
        i
    }

    /// Arrow index of `g_j`.
    pub fn g_arrow(&self, j: usize) -> usize {
        self.k + j
    }

    fn check_point(&self, x: &ProjPoint) -> Result<(), EncoderError> {
        if x.n() != self.n {
            return Err(PolyError::ArityMismatch {
                expected: self.n + 1,
                found: x.coords().len(),
            }
            .into());
        }
        if let Some(c) = x.coords().iter().find(|c| c.field() != self.field) {
            return Err(PolyError::FieldMismatch {
                expected: self.field,
                found: c.field(),
            }
            .into());
        }
        Ok(())
    }

    /// Whether every input equation vanishes at `x`.
    pub fn on_variety(&self, x: &ProjPoint) -> Result<bool, EncoderError> {
        Ok(self.first_nonvanishing_equation(x)?.is_none())
    }

    fn first_nonvanishing_equation(&self, x: &ProjPoint) -> Result<Option<usize>, EncoderError> {
        for (i, f) in self.equations.iter().enumerate() {
            if !f.evaluate(x.coords())?.is_zero() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Whether some inequation is nonzero at `x`. With an empty inequation
    /// list every point qualifies.
    pub fn in_open_part(&self, x: &ProjPoint) -> Result<bool, EncoderError> {
        if self.inequations.is_empty() {
            return Ok(true);
        }
        for h in &self.inequations {
            if !h.evaluate(x.coords())?.is_zero() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// The representation `U_x` of dimension `(0, 1, 1)` with `g_j` acting
    /// by `x_j`.
    pub fn build_ux(&self, x: &ProjPoint) -> Result<Representation, EncoderError> {
        self.check_point(x)?;
        let mut maps: Vec<Matrix> = (0..self.k).map(|_| Matrix::zeros(self.field, 0, 1)).collect();
        maps.extend(x.coords().iter().map(|c| Matrix::from_rows(self.field, 1, vec![vec![c.clone()]]).expect("1×1")));
        Ok(Representation::new(self.quiver.clone(), self.field, point_dims(), maps)?)
    }

    /// The subrepresentation of `V` spanned by `ν_d(x)` and `ν_{d−1}(x)`.
    pub fn point_to_subrep(&self, x: &ProjPoint) -> Result<SubrepPoint, EncoderError> {
        self.check_point(x)?;
        if let Some(equation) = self.first_nonvanishing_equation(x)? {
            return Err(EncoderError::NotOnVariety {
                point: x.to_string(),
                equation,
            });
        }
        let top = self.basis.veronese(x.coords())?;
        let low = self.lower_basis.veronese(x.coords())?;
        let subspaces = vec![
            Subspace::zero(self.field, 1),
            Subspace::span(self.field, self.basis.len(), &[top])?,
            Subspace::span(self.field, self.lower_basis.len(), &[low])?,
        ];
        Ok(SubrepPoint::new(&self.v, subspaces)?)
    }

    /// Reads the point back off the line at vertex 1. `None` when that line is
    /// not spanned by a Veronese vector. Stability in `V` is not checked.
    pub fn subrep_to_point(&self, u: &SubrepPoint) -> Result<Option<ProjPoint>, EncoderError> {
        if u.dims() != point_dims() {
            return Err(EncoderError::WrongDims {
                expected: point_dims(),
                found: u.dims(),
            });
        }
        let line = u.subspace(1);
        if line.ambient() != self.basis.len() {
            return Err(QuiverError::SubDimension {
                sub: line.dim(),
                ambient: self.basis.len(),
            }
            .into());
        }
        Ok(self.basis.veronese_inverse(line.basis().row(0))?)
    }
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::exactfield::Scalar;
    use crate::polyring::parse_poly;
    use crate::quiverrep::{hom_basis, hom_dim, random_scalar};

    fn polys(texts: &[&str], n: usize, field: FieldSpec) -> Vec<Polynomial> {
        texts.iter().map(|t| parse_poly(t, n, field).unwrap()).collect()
    }

    pub(super) fn conic(field: FieldSpec) -> EncodedInstance {
        encode(&polys(&["T0*T2 - T1^2"], 2, field), &polys(&["T0"], 2, field), field).unwrap()
    }

    #[test]
    fn conic_instance_shape() {
        let f3 = FieldSpec::prime(3).unwrap();
        let inst = conic(f3);
        assert_eq!((inst.n, inst.k, inst.degree), (2, 1, 2));
        assert_eq!(inst.v.dims().as_slice(), &[1, 6, 3]);
        assert_eq!(inst.w.dims().as_slice(), &[1, 6, 3]);
        assert_eq!(inst.quiver.arrows().len(), 4);
        assert_eq!(inst.quiver.arrow(0).label, "f1");
        assert_eq!(inst.quiver.arrow(inst.g_arrow(2)).label, "g2");
        for j in 0..=2 {
            let a = inst.g_arrow(j);
            assert_eq!(inst.v.map(a), inst.w.map(a));
        }
        assert_ne!(inst.v.map(0), inst.w.map(0));
    }

    #[test]
    fn degree_one_instance() {
        let q = FieldSpec::RATIONALS;
        let inst = encode(&polys(&["T0"], 3, q), &polys(&["T1"], 3, q), q).unwrap();
        assert_eq!(inst.degree, 1);
        assert_eq!(inst.v.dims().as_slice(), &[1, 4, 1]);
        for j in 0..=3 {
            let g = inst.v.map(inst.g_arrow(j));
            assert_eq!(g.shape(), (1, 4));
            let expected: Vec<i64> = (0..4).map(|c| i64::from(c == j)).collect();
            assert_eq!(g, &Matrix::from_ints(q, 1, 4, &expected));
        }
    }

    #[test]
    fn inequations_repeat_to_match() {
        let f = FieldSpec::prime(5).unwrap();
        let inst = encode(&polys(&["T0*T1", "T2^2"], 2, f), &polys(&["T0^2 + T1^2"], 2, f), f).unwrap();
        assert_eq!(inst.k, 2);
        assert_eq!(inst.system.hs.len(), 2);
        assert_eq!(inst.system.hs[0], inst.system.hs[1]);
        assert_eq!(inst.quiver.arrows().len(), 2 + 3);
    }

    #[test]
    fn field_and_guard_errors() {
        let f3 = FieldSpec::prime(3).unwrap();
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(matches!(
            encode(&polys(&["T0"], 1, f3), &polys(&["T1"], 1, f3), f5),
            Err(EncoderError::FieldMismatch { .. })
        ));
        assert!(matches!(
            encode(&polys(&["T0*T1"], 1, f3), &polys(&["2*T0*T1"], 1, f3), f3),
            Err(EncoderError::Poly(PolyError::ScalarMultiple { .. }))
        ));
    }

    #[test]
    fn ux_is_a_thin_brick() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for f in [FieldSpec::RATIONALS, FieldSpec::prime(3).unwrap()] {
            let inst = conic(f);
            let e0 = inst.build_ux(&ProjPoint::from_ints(f, &[1, 0, 0]).unwrap()).unwrap();
            assert!(!e0.map(inst.g_arrow(0)).is_zero());
            assert!(e0.map(inst.g_arrow(1)).is_zero() && e0.map(inst.g_arrow(2)).is_zero());
            for _ in 0..10 {
                let coords: Vec<Scalar> = (0..3).map(|_| random_scalar(f, 4, &mut rng)).collect();
                let Ok(x) = ProjPoint::new(coords) else { continue };
                let ux = inst.build_ux(&x).unwrap();
                assert!(ux.dims().is_thin());
                assert_eq!(hom_basis(&ux, &ux).unwrap().len(), 1);
            }
        }
    }

    #[test]
    fn conic_points_to_subreps() {
        let q = FieldSpec::RATIONALS;
        let inst = conic(q);
        let u = inst.point_to_subrep(&ProjPoint::from_ints(q, &[1, 1, 1]).unwrap()).unwrap();
        let ones = |len| vec![q.one(); len];
        assert_eq!(u.subspace(1), &Subspace::span(q, 6, &[ones(6)]).unwrap());
        assert_eq!(u.subspace(2), &Subspace::span(q, 3, &[ones(3)]).unwrap());
        assert!(matches!(
            inst.point_to_subrep(&ProjPoint::from_ints(q, &[1, 2, 3]).unwrap()),
            Err(EncoderError::NotOnVariety { equation: 0, .. })
        ));
        let u = inst.point_to_subrep(&ProjPoint::from_ints(q, &[1, 0, 0]).unwrap()).unwrap();
        let mut indicator = vec![q.zero(); 6];
        indicator[inst.basis.index_of(&crate::polyring::Monomial::pure_power(2, 0, 2)).unwrap()] = q.one();
        assert_eq!(u.subspace(1).basis().row(0), &indicator[..]);
    }

    #[test]
    fn subrep_round_trip_and_rejection() {
        for p in [3, 5] {
            let f = FieldSpec::prime(p).unwrap();
            let inst = conic(f);
            for x in ProjPoint::enumerate(2, f).unwrap() {
                if inst.on_variety(&x).unwrap() {
                    let u = inst.point_to_subrep(&x).unwrap();
                    assert_eq!(inst.subrep_to_point(&u).unwrap(), Some(x));
                }
            }
            let zero_v = Representation::zero_maps(inst.quiver.clone(), f, inst.v.dims().clone()).unwrap();
            let unit = |len: usize, i: usize| {
                let mut u = vec![f.zero(); len];
                u[i] = f.one();
                Subspace::span(f, len, &[u]).unwrap()
            };
            // the indicator of T0*T1 is not a Veronese vector
            let off = SubrepPoint::new(&zero_v, vec![Subspace::zero(f, 1), unit(6, 1), unit(3, 0)]).unwrap();
            assert_eq!(inst.subrep_to_point(&off).unwrap(), None);
            let wrong = SubrepPoint::new(&zero_v, vec![Subspace::zero(f, 1), unit(6, 1), Subspace::full(f, 3)]).unwrap();
            assert!(matches!(inst.subrep_to_point(&wrong), Err(EncoderError::WrongDims { .. })));
        }
    }

    #[test]
    fn g_identity_and_linearization() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for f in [FieldSpec::RATIONALS, FieldSpec::prime(7).unwrap()] {
            let fs = polys(&["T0*T2 - T1^2", "T0^2 + 3*T1*T2"], 2, f);
            let hs = polys(&["T0 + T2"], 2, f);
            let inst = encode(&fs, &hs, f).unwrap();
            for _ in 0..25 {
                let x: Vec<Scalar> = (0..3).map(|_| random_scalar(f, 5, &mut rng)).collect();
                if x.iter().all(Scalar::is_zero) {
                    continue;
                }
                let top = inst.basis.veronese(&x).unwrap();
                let low = inst.lower_basis.veronese(&x).unwrap();
                for (j, xj) in x.iter().enumerate() {
                    let image = inst.v.map(inst.g_arrow(j)).apply(&top).unwrap();
                    let expected: Vec<Scalar> = low.iter().map(|c| c * xj).collect();
                    assert_eq!(image, expected);
                }
                for i in 0..inst.k {
                    let phi = inst.v.map(inst.f_arrow(i)).apply(&top).unwrap();
                    assert_eq!(phi[0], inst.system.fs[i].evaluate(&x).unwrap());
                    let psi = inst.w.map(inst.f_arrow(i)).apply(&top).unwrap();
                    assert_eq!(psi[0], inst.system.hs[i].evaluate(&x).unwrap());
                }
            }
        }
    }

    #[test]
    fn v_and_w_are_bricks_without_maps_between_them() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for f in [FieldSpec::RATIONALS, FieldSpec::prime(2).unwrap(), FieldSpec::prime(3).unwrap()] {
            let n = rng.gen_range(1..3);
            let inst = encode(
                &polys(&["T0*T1"], n, f),
                &polys(&[if n == 1 { "T0^2 + T1^2" } else { "T2^2 + T0*T1 + T1^2" }], n, f),
                f,
            )
            .unwrap();
            assert_eq!(hom_dim(&inst.v, &inst.w).unwrap(), 0);
            assert_eq!(hom_dim(&inst.w, &inst.v).unwrap(), 0);
            assert_eq!(hom_dim(&inst.v, &inst.v).unwrap(), 1);
            assert_eq!(hom_dim(&inst.w, &inst.w).unwrap(), 1);
        }
    }
}
