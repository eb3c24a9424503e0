use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::PolyError;
use crate::exactfield::{FieldSpec, Scalar};

/// An exponent tuple `(m_0, …, m_n)`, standing for `T_0^{m_0} ⋯ T_n^{m_n}`.
///
/// The derived order is plain lexicographic on the exponents; bases list
/// monomials in *descending* lexicographic order, see [`MonomialBasis`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// `T_j^power` in `n + 1` variables.
    pub fn pure_power(n: usize, j: usize, power: u32) -> Self {
        let mut e = vec![0; n + 1];
        e[j] = power;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `m − e_j`, or `None` when `m_j = 0`.
    pub fn lower(&self, j: usize) -> Option<Monomial> {
        if self.0[j] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[j] -= 1;
        Some(Monomial(e))
    }

    pub fn raise(&self, j: usize) -> Monomial {
        let mut e = self.0.clone();
        e[j] += 1;
        Monomial(e)
    }

    /// `x^m = x_0^{m_0} ⋯ x_n^{m_n}`.
    pub fn evaluate(&self, x: &[Scalar]) -> Scalar {
        let field = x[0].field();
        self.0
            .iter()
            .zip(x)
            .filter(|(&e, _)| e > 0)
            .fold(field.one(), |acc, (&e, xi)| &acc * &xi.pow(e))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match e {
                1 => write!(f, "T{j}")?,
                _ => write!(f, "T{j}^{e}")?,
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials of degree `d` in `n + 1` variables (the set M_{n,d}), in
/// descending lexicographic order, with the inverse index map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    n: usize,
    degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

/// Identifier of the fixed global monomial order, serialized with reports.
pub const MONOMIAL_ORDER_ID: &str = "desc-lex";

impl MonomialBasis {
    pub fn new(n: usize, degree: u32) -> Self {
        let mut monomials = Vec::new();
        let mut current = vec![0u32; n + 1];
        fill_desc_lex(&mut current, 0, degree, &mut monomials);
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialBasis {
            n,
            degree,
            monomials,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// The Veronese image `ν(x) = (x^m)_{m ∈ M_{n,d}}`.
    pub fn veronese(&self, x: &[Scalar]) -> Result<Vec<Scalar>, PolyError> {
        self.check_point(x)?;
        Ok(self.monomials.iter().map(|m| m.evaluate(x)).collect())
    }

    fn check_point(&self, x: &[Scalar]) -> Result<(), PolyError> {
        if x.len() != self.n + 1 {
            return Err(PolyError::ArityMismatch {
                expected: self.n + 1,
                found: x.len(),
            });
        }
        if x.iter().all(Scalar::is_zero) {
            return Err(PolyError::ZeroPoint);
        }
        Ok(())
    }

    /// Recovers `[x]` from a vector proportional to `ν(x)`, or `None` if `u` is
    /// not on the Veronese variety.
    ///
    /// Uses a coordinate `j` with `u[d·e_j] ≠ 0` and sets
    /// `x_i = u[(d−1)e_j + e_i] / u[d·e_j]`; the candidate is then re-embedded and
    /// checked for proportionality, so a `Some` answer is always verified.
    pub fn veronese_inverse(&self, u: &[Scalar]) -> Result<Option<ProjPoint>, PolyError> {
        if u.len() != self.len() {
            return Err(PolyError::ArityMismatch {
                expected: self.len(),
                found: u.len(),
            });
        }
        if u.iter().all(Scalar::is_zero) {
            return Err(PolyError::ZeroPoint);
        }
        if self.degree == 0 {
            return Err(PolyError::ZeroDegree);
        }
        let d = self.degree;
        let Some((j, pivot)) = (0..=self.n).find_map(|j| {
            let idx = self.index[&Monomial::pure_power(self.n, j, d)];
            (!u[idx].is_zero()).then(|| (j, u[idx].clone()))
        }) else {
            return Ok(None);
        };
        let base = Monomial::pure_power(self.n, j, d - 1);
        let x: Vec<Scalar> = (0..=self.n)
            .map(|i| &u[self.index[&base.raise(i)]] / &pivot)
            .collect();
        let image = self.veronese(&x)?;
        if !proportional(u, &image) {
            return Ok(None);
        }
        ProjPoint::new(x).map(Some)
    }
}

fn fill_desc_lex(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill_desc_lex(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

/// True when `u = λ·v` for some nonzero λ. Both vectors must be nonzero.
pub fn proportional(u: &[Scalar], v: &[Scalar]) -> bool {
    if u.len() != v.len() {
        return false;
    }
    let Some(k) = v.iter().position(|s| !s.is_zero()) else {
        return false;
    };
    if u[k].is_zero() {
        return false;
    }
    let lambda = &u[k] / &v[k];
    u.iter().zip(v).all(|(a, b)| *a == &lambda * b)
}

/// A point of projective space, normalized so the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ProjPoint(Vec<Scalar>);

impl ProjPoint {
    pub fn new(coords: Vec<Scalar>) -> Result<Self, PolyError> {
        let Some(k) = coords.iter().position(|s| !s.is_zero()) else {
            return Err(PolyError::ZeroPoint);
        };
        let inv = coords[k].inv().expect("nonzero");
        Ok(ProjPoint(coords.iter().map(|c| c * &inv).collect()))
    }

    pub fn from_ints(field: FieldSpec, coords: &[i64]) -> Result<Self, PolyError> {
        Self::new(coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    /// Every point of ℙ^n over a finite field, grouped by the position of the
    /// leading 1 and then in odometer order of the trailing coordinates.
    pub fn enumerate(n: usize, field: FieldSpec) -> Result<Vec<ProjPoint>, PolyError> {
        let elements = field.elements().ok_or(PolyError::InfiniteField)?;
        let q = elements.len();
        let mut out = Vec::new();
        for lead in 0..=n {
            let free = n - lead;
            let total = q.checked_pow(free as u32).ok_or(PolyError::InfiniteField)?;
            for code in 0..total {
                let mut coords = vec![field.zero(); n + 1];
                coords[lead] = field.one();
                let mut c = code;
                for pos in (lead + 1..=n).rev() {
                    coords[pos] = elements[c % q].clone();
                    c /= q;
                }
                out.push(ProjPoint(coords));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}
