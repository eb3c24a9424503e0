use serde::Serialize;

use super::QuiverError;
use crate::exactfield::{FieldSpec, Matrix, Scalar};

/// Default bound on the number of enumeration candidates.
pub const DEFAULT_CAP: u128 = 10_000_000;

/// A linear subspace of `K^ambient`, stored as the rows of its reduced row
/// echelon basis. Two subspaces are equal iff their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    #[serde(skip)]
    pivots: Vec<usize>,
}

impl Subspace {
    /// The span of the given vectors, in canonical form.
    pub fn span(field: FieldSpec, ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Self, QuiverError> {
        let m = Matrix::from_rows(field, ambient, vectors.to_vec())?;
        let r = m.rref();
        let dim = r.pivots.len();
        Ok(Subspace {
            ambient,
            basis: r.matrix.submatrix(0..dim, 0..ambient),
            pivots: r.pivots,
        })
    }

    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    fn from_rref_unchecked(basis: Matrix, pivots: Vec<usize>) -> Self {
        Subspace {
            ambient: basis.cols(),
            basis,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    /// The canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Non-pivot coordinates; the standard vectors at these positions span the
    /// canonical complement.
    pub fn complement_positions(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// `v − Σ_r v[pivot_r]·basis_r`: the canonical representative of `v` modulo
    /// the subspace (zero at every pivot position).
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = v[p].clone();
            if c.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(r).iter().enumerate() {
                if !b.is_zero() {
                    w[j] = &w[j] - &(&c * b);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.contains(v).then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Coordinates of the class of `v` in the quotient, relative to the
    /// canonical complement.
    pub fn quotient_coordinates(&self, v: &[Scalar]) -> Vec<Scalar> {
        let w = self.reduce(v);
        self.complement_positions().into_iter().map(|c| w[c].clone()).collect()
    }
}

impl Subspace {
    /// The matrix of `v ↦ quotient_coordinates(v)`; its kernel is the subspace.
    pub fn quotient_matrix(&self) -> Matrix {
        let field = self.field();
        let positions = self.complement_positions();
        let mut m = Matrix::zeros(field, positions.len(), self.ambient);
        for (r, &c) in positions.iter().enumerate() {
            m.set(r, c, field.one());
        }
        for (row, &p) in self.pivots.iter().enumerate() {
            for (r, &c) in positions.iter().enumerate() {
                let b = self.basis.get(row, c);
                if !b.is_zero() {
                    m.set(r, p, -b);
                }
            }
        }
        m
    }
}

/// The Gaussian binomial `[d choose e]_q`, i.e. the number of `e`-dimensional
/// subspaces of `𝔽_q^d`. `None` on overflow.
pub fn gaussian_binomial(d: usize, e: usize, q: u64) -> Option<u128> {
    if e > d {
        return Some(0);
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..e {
        num = num.checked_mul(q.checked_pow((d - i) as u32)?.checked_sub(1)?)?;
        den = den.checked_mul(q.checked_pow((i + 1) as u32)?.checked_sub(1)?)?;
    }
    Some(num / den)
}

/// Every `e`-dimensional subspace of `𝔽_p^d`, exactly once, in canonical
/// order: by pivot set (lexicographic), then by free entries in odometer order.
pub fn enumerate_subspaces(field: FieldSpec, d: usize, e: usize, cap: u128) -> Result<Vec<Subspace>, QuiverError> {
    let elements = field.elements().ok_or(QuiverError::InfiniteField)?;
    let q = elements.len() as u64;
    if e > d {
        return Err(QuiverError::SubDimension { sub: e, ambient: d });
    }
    let count = gaussian_binomial(d, e, q);
    match count {
        Some(c) if c <= cap => {}
        _ => return Err(QuiverError::CapExceeded { needed: count, cap }),
    }
    let mut out = Vec::with_capacity(count.unwrap_or(0) as usize);
    let mut pivots: Vec<usize> = (0..e).collect();
    loop {
        push_cell(field, d, &pivots, &elements, &mut out);
        if !next_combination(&mut pivots, d) {
            break;
        }
    }
    Ok(out)
}

fn push_cell(field: FieldSpec, d: usize, pivots: &[usize], elements: &[Scalar], out: &mut Vec<Subspace>) {
    let e = pivots.len();
    let free: Vec<(usize, usize)> = (0..e)
        .flat_map(|r| ((pivots[r] + 1)..d).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
        .collect();
    let q = elements.len();
    let mut digits = vec![0usize; free.len()];
    loop {
        let mut m = Matrix::zeros(field, e, d);
        for (r, &p) in pivots.iter().enumerate() {
            m.set(r, p, field.one());
        }
        for (&(r, c), &k) in free.iter().zip(&digits) {
            if k != 0 {
                m.set(r, c, elements[k].clone());
            }
        }
        out.push(Subspace::from_rref_unchecked(m, pivots.to_vec()));
        // odometer, last position fastest
        let mut i = digits.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
        }
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(2, 1, 3), Some(4));
        assert_eq!(gaussian_binomial(4, 2, 2), Some(35));
        assert_eq!(gaussian_binomial(6, 1, 5), Some(3906));
        assert_eq!(gaussian_binomial(5, 0, 7), Some(1));
        assert_eq!(gaussian_binomial(5, 5, 7), Some(1));
        assert_eq!(gaussian_binomial(2, 3, 7), Some(0));
        assert_eq!(gaussian_binomial(200, 100, 1 << 31), None);
    }

    #[test]
    fn enumeration_examples() {
        let f3 = FieldSpec::prime(3).unwrap();
        let lines = enumerate_subspaces(f3, 2, 1, DEFAULT_CAP).unwrap();
        assert_eq!(lines.len(), 4);
        let zero = enumerate_subspaces(f3, 3, 0, DEFAULT_CAP).unwrap();
        assert_eq!(zero, vec![Subspace::zero(f3, 3)]);
        let full = enumerate_subspaces(f3, 3, 3, DEFAULT_CAP).unwrap();
        assert_eq!(full, vec![Subspace::full(f3, 3)]);
        assert!(matches!(
            enumerate_subspaces(FieldSpec::RATIONALS, 2, 1, DEFAULT_CAP),
            Err(QuiverError::InfiniteField)
        ));
        assert!(matches!(
            enumerate_subspaces(f3, 6, 3, 10),
            Err(QuiverError::CapExceeded { .. })
        ));
    }

    #[test]
    fn enumeration_is_complete_and_canonical() {
        for (p, d) in [(2u64, 4usize), (3, 3), (5, 2)] {
            let f = FieldSpec::prime(p).unwrap();
            for e in 0..=d {
                let spaces = enumerate_subspaces(f, d, e, DEFAULT_CAP).unwrap();
                assert_eq!(spaces.len() as u128, gaussian_binomial(d, e, p).unwrap());
                let mut sorted = spaces.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), spaces.len(), "duplicates for p={p} d={d} e={e}");
                for s in &spaces {
                    assert_eq!(s.dim(), e);
                    let respan = Subspace::span(f, d, &s.basis().row_vectors()).unwrap();
                    assert_eq!(&respan, s);
                }
            }
        }
    }

    #[test]
    fn reduce_and_quotient_coordinates() {
        let f = FieldSpec::RATIONALS;
        let ints = |v: &[i64]| v.iter().map(|&c| f.from_i64(c)).collect::<Vec<_>>();
        let u = Subspace::span(f, 3, &[ints(&[2, 4, 0])]).unwrap();
        assert_eq!(u.basis().row(0), &ints(&[1, 2, 0])[..]);
        assert!(u.contains(&ints(&[-1, -2, 0])));
        assert!(!u.contains(&ints(&[1, 0, 0])));
        assert_eq!(u.coordinates(&ints(&[3, 6, 0])), Some(ints(&[3])));
        assert_eq!(u.complement_positions(), vec![1, 2]);
        // (1, 0, 5) ≡ (0, -2, 5) modulo (1, 2, 0)
        assert_eq!(u.quotient_coordinates(&ints(&[1, 0, 5])), ints(&[-2, 5]));
    }
}
