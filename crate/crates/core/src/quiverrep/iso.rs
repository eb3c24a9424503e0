use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{hom_basis, hom_dim, random_scalar, Morphism, QuiverError, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsoVerdict {
    Isomorphic,
    NotIsomorphic,
    /// No invertible morphism was found, but the search was not exhaustive.
    ProbablyNotIsomorphic,
}

impl IsoVerdict {
    pub fn is_isomorphic(self) -> bool {
        self == IsoVerdict::Isomorphic
    }
}

#[derive(Clone, Copy, Debug)]
pub struct IsoOptions {
    pub random_trials: usize,
    pub exhaustive_limit: u128,
    pub seed: u64,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            random_trials: 64,
            exhaustive_limit: 10_000,
            seed: 0,
        }
    }
}

pub fn are_isomorphic(m: &Representation, n: &Representation) -> Result<IsoVerdict, QuiverError> {
    are_isomorphic_with(m, n, &IsoOptions::default())
}

/// Looks for an invertible element in the span of a basis of `Hom(M, N)`.
pub fn are_isomorphic_with(m: &Representation, n: &Representation, opts: &IsoOptions) -> Result<IsoVerdict, QuiverError> {
    m.check_compatible(n)?;
    if m.dims() != n.dims() {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    if m.is_zero() {
        return Ok(IsoVerdict::Isomorphic);
    }
    let mm = hom_dim(m, m)?;
    if hom_dim(n, n)? != mm || hom_dim(n, m)? != mm {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    let basis = hom_basis(m, n)?;
    if basis.len() != mm {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    let field = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.random_trials {
        let coeffs: Vec<_> = basis.iter().map(|_| random_scalar(field, 100, &mut rng)).collect();
        if combination_is_iso(&basis, &coeffs) {
            return Ok(IsoVerdict::Isomorphic);
        }
    }
    let Some(elements) = field.elements() else {
        return Ok(IsoVerdict::ProbablyNotIsomorphic);
    };
    let q = elements.len() as u128;
    let span = u32::try_from(basis.len()).ok().and_then(|k| q.checked_pow(k));
    match span {
        Some(s) if s <= opts.exhaustive_limit => {}
        _ => return Ok(IsoVerdict::ProbablyNotIsomorphic),
    }
    let mut digits = vec![0usize; basis.len()];
    loop {
        let coeffs: Vec<_> = digits.iter().map(|&i| elements[i].clone()).collect();
        if combination_is_iso(&basis, &coeffs) {
            return Ok(IsoVerdict::Isomorphic);
        }
        let mut i = digits.len();
        loop {
            if i == 0 {
                return Ok(IsoVerdict::NotIsomorphic);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < elements.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

fn combination_is_iso(basis: &[Morphism], coeffs: &[crate::exactfield::Scalar]) -> bool {
    Morphism::combination(basis, coeffs).is_some_and(|phi| phi.is_isomorphism())
}
