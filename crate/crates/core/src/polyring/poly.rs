use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use super::{Monomial, MonomialBasis, PolyError};
use crate::exactfield::{FieldSpec, Matrix, Scalar};

/// A multivariate polynomial in `T_0, …, T_n` over an exact field.
///
/// Terms with zero coefficient are never stored, so the zero polynomial has an
/// empty term map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    field: FieldSpec,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(n: usize, field: FieldSpec) -> Self {
        Polynomial {
            n,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        let field = c.field();
        let mut p = Self::zero(n, field);
        p.add_term(Monomial::new(vec![0; n + 1]), c);
        p
    }

    pub fn variable(n: usize, field: FieldSpec, j: usize) -> Self {
        let mut p = Self::zero(n, field);
        p.add_term(Monomial::pure_power(n, j, 1), field.one());
        p
    }

    pub fn from_terms(n: usize, field: FieldSpec, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero(n, field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        assert_eq!(m.num_vars(), self.n + 1, "monomial arity");
        assert_eq!(c.field(), self.field, "coefficient field");
        let sum = match self.terms.get(&m) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms, or `None` for a mixed-degree polynomial.
    /// The zero polynomial has no degree and is rejected.
    pub fn is_homogeneous(&self) -> Result<Option<u32>, PolyError> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next().ok_or(PolyError::ZeroPolynomial)?;
        Ok(degrees.all(|d| d == first).then_some(first))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scaled(&self, c: &Scalar) -> Polynomial {
        Polynomial::from_terms(self.n, self.field, self.terms.iter().map(|(m, a)| (m.clone(), a * c)))
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scaled(&-self.field.one()))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_compatible(other);
        let mut out = Polynomial::zero(self.n, self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.n, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn check_compatible(&self, other: &Polynomial) {
        assert_eq!(self.n, other.n, "polynomials in different rings");
        assert_eq!(self.field, other.field, "polynomials over different fields");
    }

    pub fn evaluate(&self, x: &[Scalar]) -> Result<Scalar, PolyError> {
        if x.len() != self.n + 1 {
            return Err(PolyError::ArityMismatch {
                expected: self.n + 1,
                found: x.len(),
            });
        }
        if let Some(bad) = x.iter().find(|s| s.field() != self.field) {
            return Err(PolyError::FieldMismatch {
                expected: self.field,
                found: bad.field(),
            });
        }
        Ok(self
            .terms
            .iter()
            .fold(self.field.zero(), |acc, (m, c)| &acc + &(c * &m.evaluate(x))))
    }

    /// Coefficients over a monomial basis, i.e. the linear functional that this
    /// polynomial becomes after the Veronese embedding.
    pub fn coefficient_vector(&self, basis: &MonomialBasis) -> Result<Vec<Scalar>, PolyError> {
        if basis.n() != self.n {
            return Err(PolyError::ArityMismatch {
                expected: basis.n() + 1,
                found: self.n + 1,
            });
        }
        let mut v = vec![self.field.zero(); basis.len()];
        for (m, c) in &self.terms {
            let i = basis.index_of(m).ok_or(PolyError::DegreeMismatch {
                expected: basis.degree(),
                found: m.degree(),
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// Whether `self = λ·other` for some scalar λ (both nonzero, same degree).
    ///
    /// Decided by the rank of the 2×N coefficient matrix.
    pub fn is_scalar_multiple_of(&self, other: &Polynomial) -> bool {
        let (Ok(Some(d1)), Ok(Some(d2))) = (self.is_homogeneous(), other.is_homogeneous()) else {
            return false;
        };
        if d1 != d2 || self.n != other.n || self.field != other.field {
            return false;
        }
        let basis = MonomialBasis::new(self.n, d1);
        let rows = vec![
            self.coefficient_vector(&basis).expect("homogeneous of basis degree"),
            other.coefficient_vector(&basis).expect("homogeneous of basis degree"),
        ];
        Matrix::from_rows(self.field, basis.len(), rows).expect("same field").rank() == 1
    }
}

impl fmt::Display for Polynomial {
    /// Terms in descending lexicographic order, e.g. `T0*T2 - T1^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (negative, mag) = match c {
                Scalar::Rational(r) if *r < num_rational::BigRational::from_integer(0.into()) => (true, -c),
                _ => (false, c.clone()),
            };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_const = m.degree() == 0;
            if is_const {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// The equation/inequation lists after bringing everything to one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedSystem {
    /// Common degree ℓ.
    pub degree: u32,
    pub fs: Vec<Polynomial>,
    pub hs: Vec<Polynomial>,
    /// For each normalized f, the index of the input polynomial and its power.
    pub f_origin: Vec<(usize, u32)>,
    pub h_origin: Vec<(usize, u32)>,
    /// True when the inequation list was empty and replaced by `T_0^ℓ, …, T_n^ℓ`.
    pub projective_fill: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NormalizeOptions {
    /// Accept an empty inequation list and use the pure powers `T_j^ℓ`, whose
    /// non-vanishing loci cover the whole variety.
    pub allow_projective: bool,
}

/// Raises every `f_i` and `h_j` to the power that brings it to degree
/// `ℓ = lcm` of all degrees, then cycles the shorter list until both have
/// length `max(|fs|, |hs|)`.
pub fn normalize_degrees(
    fs: &[Polynomial],
    hs: &[Polynomial],
    opts: NormalizeOptions,
) -> Result<NormalizedSystem, PolyError> {
    if fs.is_empty() {
        return Err(PolyError::NoEquations);
    }
    if hs.is_empty() && !opts.allow_projective {
        return Err(PolyError::NoInequations);
    }
    let n = fs[0].n();
    let field = fs[0].field();
    let degree_of = |p: &Polynomial, role: &'static str, index: usize| -> Result<u32, PolyError> {
        if p.n() != n || p.field() != field {
            return Err(PolyError::Incompatible { role, index });
        }
        match p.is_homogeneous() {
            Err(PolyError::ZeroPolynomial) => Err(PolyError::ZeroInput { role, index }),
            Err(e) => Err(e),
            Ok(None) => Err(PolyError::NotHomogeneous { role, index }),
            Ok(Some(0)) => Err(PolyError::ConstantInput { role, index }),
            Ok(Some(d)) => Ok(d),
        }
    };
    let f_deg: Vec<u32> = fs
        .iter()
        .enumerate()
        .map(|(i, p)| degree_of(p, "equation", i))
        .collect::<Result<_, _>>()?;
    let h_deg: Vec<u32> = hs
        .iter()
        .enumerate()
        .map(|(i, p)| degree_of(p, "inequation", i))
        .collect::<Result<_, _>>()?;
    let ell = f_deg.iter().chain(&h_deg).fold(1u32, |acc, &d| acc.lcm(&d));

    let raised = |ps: &[Polynomial], degs: &[u32]| -> Vec<(Polynomial, (usize, u32))> {
        ps.iter()
            .zip(degs)
            .enumerate()
            .map(|(i, (p, &d))| (p.pow(ell / d), (i, ell / d)))
            .collect()
    };
    let mut f_list = raised(fs, &f_deg);
    let mut h_list = raised(hs, &h_deg);
    let projective_fill = h_list.is_empty();
    if projective_fill {
        h_list = (0..=n)
            .map(|j| {
                let p = Polynomial::from_terms(n, field, [(Monomial::pure_power(n, j, ell), field.one())]);
                (p, (j, 1))
            })
            .collect();
    }

    for (j, (h, _)) in h_list.iter().enumerate() {
        for (i, (f, _)) in f_list.iter().enumerate() {
            if h.is_scalar_multiple_of(f) {
                return Err(PolyError::ScalarMultiple {
                    inequation: h_list[j].1 .0,
                    equation: f_list[i].1 .0,
                });
            }
        }
    }

    let k = f_list.len().max(h_list.len());
    let cycle = |list: &mut Vec<(Polynomial, (usize, u32))>| {
        let base = list.len();
        for i in base..k {
            list.push(list[i % base].clone());
        }
    };
    cycle(&mut f_list);
    cycle(&mut h_list);

    let (fs, f_origin) = f_list.into_iter().unzip();
    let (hs, h_origin) = h_list.into_iter().unzip();
    Ok(NormalizedSystem {
        degree: ell,
        fs,
        hs,
        f_origin,
        h_origin,
        projective_fill,
    })
}
