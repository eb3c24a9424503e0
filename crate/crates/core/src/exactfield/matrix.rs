use std::fmt;

use serde::Serialize;

use super::{FieldError, FieldSpec, Scalar};

/// A dense matrix over one exact field, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Result of row reduction: the reduced row echelon form and its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from explicit rows. Every entry must belong to `field`
    /// and all rows must have length `cols`.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self, FieldError> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(FieldError::Ragged {
                    expected: cols,
                    found: row.len(),
                });
            }
            for s in row {
                if s.field() != field {
                    return Err(FieldError::FieldMismatch {
                        left: field,
                        right: s.field(),
                    });
                }
                entries.push(s);
            }
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols,
            entries,
        })
    }

    /// Convenience constructor from integer literals, row-major.
    pub fn from_ints(field: FieldSpec, rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols, "entry count must be rows * cols");
        Matrix {
            field,
            rows,
            cols,
            entries: values.iter().map(|&v| field.from_i64(v)).collect(),
        }
    }

    /// A single column built from a vector.
    pub fn column_vector(field: FieldSpec, v: &[Scalar]) -> Result<Self, FieldError> {
        Self::from_rows(field, 1, v.iter().map(|s| vec![s.clone()]).collect())
    }

    /// A single row built from a vector.
    pub fn row_vector(field: FieldSpec, v: &[Scalar]) -> Result<Self, FieldError> {
        Self::from_rows(field, v.len(), vec![v.to_vec()])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "entry from a different field");
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    fn check_field(&self, other: &Matrix) -> Result<(), FieldError> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, FieldError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(FieldError::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// `self · v` for a column vector given as a slice.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>, FieldError> {
        if v.len() != self.cols {
            return Err(FieldError::ShapeMismatch {
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix, FieldError> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(FieldError::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, FieldError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, FieldError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scaled(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, FieldError> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(FieldError::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, FieldError> {
        Ok(self.transpose().vstack(&other.transpose())?.transpose())
    }

    /// Writes `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        assert_eq!(block.field, self.field);
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.entries[(r0 + r) * self.cols + c0 + c] = block.get(r, c).clone();
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.entries[i * out.cols + j] = self.get(r, c).clone();
            }
        }
        out
    }

    /// Gauss-Jordan elimination to the unique reduced row echelon form.
    ///
    /// Over a field the RREF is unique, so two matrices with the same row
    /// space reduce to bit-identical outputs (after dropping zero rows).
    pub fn rref(&self) -> Rref {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..a.cols {
            if pivot_row == a.rows {
                break;
            }
            let Some(found) = (pivot_row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            a.swap_rows(found, pivot_row);
            let inv = a.get(pivot_row, col).inv().expect("pivot is nonzero");
            for c in col..a.cols {
                let idx = pivot_row * a.cols + c;
                a.entries[idx] = &a.entries[idx] * &inv;
            }
            for r in 0..a.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = a.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..a.cols {
                    let p = a.get(pivot_row, c);
                    if p.is_zero() {
                        continue;
                    }
                    let idx = r * a.cols + c;
                    a.entries[idx] = &a.entries[idx] - &(&factor * p);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref { matrix: a, pivots }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Canonical basis of the null space `{v : self · v = 0}`, one vector per
    /// free column of the RREF, with a 1 in that column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![self.field.zero(); self.cols];
                v[free] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -matrix.get(row, free);
                }
                v
            })
            .collect()
    }

    /// One solution of `self · x = b`, with free variables set to zero, or
    /// `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, FieldError> {
        if b.len() != self.rows {
            return Err(FieldError::ShapeMismatch {
                left: self.shape(),
                right: (b.len(), 1),
            });
        }
        let rhs = Matrix::column_vector(self.field, b)?;
        let Rref { matrix, pivots } = self.hstack(&rhs)?.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// True for a square matrix of full rank.
    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.row_vectors().serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(q(), 2);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1]);

        let z = Matrix::zeros(q(), 3, 2);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_hand_reduction() {
        let m = Matrix::from_ints(q(), 2, 2, &[2, 4, 1, 2]);
        let r = m.rref();
        assert_eq!(r.matrix, Matrix::from_ints(q(), 2, 2, &[1, 2, 0, 0]));
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(q(), 4).rank(), 4);
        assert_eq!(Matrix::zeros(q(), 3, 5).rank(), 0);
        assert_eq!(Matrix::from_ints(q(), 3, 2, &[1, 2, 2, 4, 3, 6]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(q(), 3).kernel_basis().is_empty());
        let k = Matrix::zeros(q(), 2, 3).kernel_basis();
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            for (j, s) in v.iter().enumerate() {
                assert_eq!(s.is_one(), i == j);
            }
        }
        // x + y = 0 over F_3: free column 1, so v = (-1, 1) = (2, 1).
        let k = Matrix::from_ints(f3(), 1, 2, &[1, 1]).kernel_basis();
        assert_eq!(k, vec![vec![f3().from_i64(2), f3().from_i64(1)]]);
    }

    #[test]
    fn solve_examples() {
        let b: Vec<_> = [3, -1].iter().map(|&v| q().from_i64(v)).collect();
        assert_eq!(Matrix::identity(q(), 2).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(Matrix::zeros(q(), 2, 2).solve(&b).unwrap(), None);
        let x = Matrix::from_ints(q(), 1, 2, &[1, 2]).solve(&[q().from_i64(5)]).unwrap();
        assert_eq!(x, Some(vec![q().from_i64(5), q().zero()]));
        assert!(matches!(
            Matrix::identity(q(), 2).solve(&[q().one()]),
            Err(FieldError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn mixed_fields_rejected() {
        let err = Matrix::from_rows(q(), 2, vec![vec![q().one(), f3().one()]]).unwrap_err();
        assert!(matches!(err, FieldError::FieldMismatch { .. }));
        let a = Matrix::identity(q(), 2);
        let b = Matrix::identity(f3(), 2);
        assert!(a.mul(&b).is_err());
        assert!(a.vstack(&b).is_err());
    }

    fn arb_matrix(field: FieldSpec) -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(move |(r, c)| {
            prop::collection::vec(-4i64..5, r * c).prop_map(move |v| Matrix::from_ints(field, r, c, &v))
        })
    }

    fn arb_any_field_matrix() -> impl Strategy<Value = Matrix> {
        prop_oneof![arb_matrix(FieldSpec::RATIONALS), arb_matrix(FieldSpec::prime(2).unwrap()), arb_matrix(FieldSpec::prime(5).unwrap())]
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in arb_any_field_matrix()) {
            let once = m.rref();
            let twice = once.matrix.rref();
            prop_assert_eq!(&twice.matrix, &once.matrix);
            prop_assert_eq!(twice.pivots, once.pivots);
        }

        #[test]
        fn rank_bounds_and_transpose(m in arb_any_field_matrix()) {
            let r = m.rank();
            prop_assert!(r <= m.rows().min(m.cols()));
            prop_assert_eq!(r, m.transpose().rank());
        }

        #[test]
        fn kernel_vectors_are_independent_solutions(m in arb_any_field_matrix()) {
            let k = m.kernel_basis();
            prop_assert_eq!(k.len(), m.cols() - m.rank());
            for v in &k {
                prop_assert!(m.apply(v).unwrap().iter().all(Scalar::is_zero));
            }
            if !k.is_empty() {
                let stacked = Matrix::from_rows(m.field(), m.cols(), k.clone()).unwrap();
                prop_assert_eq!(stacked.rank(), k.len());
            }
        }

        #[test]
        fn solve_finds_consistent_solutions(m in arb_any_field_matrix(), seed in prop::collection::vec(-3i64..4, 6)) {
            let x0: Vec<_> = seed.iter().take(m.cols()).map(|&v| m.field().from_i64(v)).collect();
            prop_assume!(x0.len() == m.cols());
            let b = m.apply(&x0).unwrap();
            let x = m.solve(&b).unwrap().expect("b is in the column space");
            prop_assert_eq!(m.apply(&x).unwrap(), b);
        }
    }
}
