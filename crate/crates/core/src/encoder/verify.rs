use std::collections::BTreeSet;

use serde::Serialize;

use super::{point_dims, EncodedInstance, EncoderError};
use crate::polyring::ProjPoint;
use crate::quiverrep::{enumerate_subreps, hom_dim, restrict_and_quotient, SubrepPoint};
use crate::subcat::{exact_grassmannian_points, member, SubcatPredicate};

/// Why a subrepresentation and a variety point failed to pair up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Mismatch {
    /// The line at vertex 1 is not spanned by a Veronese vector.
    Undecodable { subrep: SubrepPoint },
    /// The decoded point is outside the target point set.
    OutsideTarget { point: ProjPoint, subrep: SubrepPoint },
    /// Re-encoding the decoded point gives a different subrepresentation.
    RoundTrip { point: ProjPoint, subrep: SubrepPoint },
    /// Two subrepresentations decode to the same point.
    Duplicate { point: ProjPoint },
    /// A target point that no subrepresentation decodes to.
    Missing { point: ProjPoint },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub grass_count: usize,
    pub variety_count: usize,
    pub matched: bool,
    pub mismatches: Vec<Mismatch>,
}

fn target_points(inst: &EncodedInstance, open_only: bool) -> Result<Vec<ProjPoint>, EncoderError> {
    let mut out = Vec::new();
    for x in ProjPoint::enumerate(inst.n, inst.field)? {
        if inst.on_variety(&x)? && (!open_only || inst.in_open_part(&x)?) {
            out.push(x);
        }
    }
    Ok(out)
}

fn match_points(inst: &EncodedInstance, subreps: &[SubrepPoint], targets: &[ProjPoint]) -> Result<Vec<Mismatch>, EncoderError> {
    let target_set: BTreeSet<&ProjPoint> = targets.iter().collect();
    let mut seen = BTreeSet::new();
    let mut mismatches = Vec::new();
    for u in subreps {
        let Some(x) = inst.subrep_to_point(u)? else {
            mismatches.push(Mismatch::Undecodable { subrep: u.clone() });
            continue;
        };
        if !target_set.contains(&x) {
            mismatches.push(Mismatch::OutsideTarget {
                point: x,
                subrep: u.clone(),
            });
            continue;
        }
        if &inst.point_to_subrep(&x)? != u {
            mismatches.push(Mismatch::RoundTrip {
                point: x.clone(),
                subrep: u.clone(),
            });
        }
        if !seen.insert(x.clone()) {
            mismatches.push(Mismatch::Duplicate { point: x });
        }
    }
    for x in targets {
        if !seen.contains(x) {
            mismatches.push(Mismatch::Missing { point: x.clone() });
        }
    }
    Ok(mismatches)
}

/// Enumerates `Gr((0,1,1), V)` and the points of the projective variety
/// independently and checks that decoding pairs them up exactly.
pub fn verify_bijection(inst: &EncodedInstance, cap: u128) -> Result<BijectionReport, EncoderError> {
    let subreps = enumerate_subreps(&inst.v, &point_dims(), cap)?;
    let targets = target_points(inst, false)?;
    let mismatches = match_points(inst, &subreps, &targets)?;
    Ok(BijectionReport {
        grass_count: subreps.len(),
        variety_count: targets.len(),
        matched: mismatches.is_empty() && subreps.len() == targets.len(),
        mismatches,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TruthTable {
    pub hom_zero_h_nonzero: usize,
    pub hom_zero_h_zero: usize,
    pub hom_nonzero_h_nonzero: usize,
    pub hom_nonzero_h_zero: usize,
}

impl TruthTable {
    pub fn violations(&self) -> usize {
        self.hom_zero_h_zero + self.hom_nonzero_h_nonzero
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointHom {
    pub point: ProjPoint,
    pub hom_dim: usize,
    pub h_nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub hom_v_w: usize,
    pub hom_w_v: usize,
    pub end_v: usize,
    pub end_w: usize,
    pub part_i: bool,
    /// Absent over an infinite field.
    pub truth_table: Option<TruthTable>,
    pub violations: Vec<PointHom>,
    pub part_ii: Option<bool>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.part_i && self.part_ii != Some(false)
    }
}

/// Checks that `V` and `W` are bricks with no maps between them, and (over a
/// finite field) that `Hom(U_x, W) = 0` exactly at the variety points where
/// some inequation is nonzero.
pub fn verify_lemma_hom(inst: &EncodedInstance) -> Result<LemmaReport, EncoderError> {
    let hom_v_w = hom_dim(&inst.v, &inst.w)?;
    let hom_w_v = hom_dim(&inst.w, &inst.v)?;
    let end_v = hom_dim(&inst.v, &inst.v)?;
    let end_w = hom_dim(&inst.w, &inst.w)?;
    let part_i = hom_v_w == 0 && hom_w_v == 0 && end_v == 1 && end_w == 1;
    if !inst.field.is_finite() {
        return Ok(LemmaReport {
            hom_v_w,
            hom_w_v,
            end_v,
            end_w,
            part_i,
            truth_table: None,
            violations: Vec::new(),
            part_ii: None,
        });
    }
    let mut table = TruthTable::default();
    let mut violations = Vec::new();
    for x in target_points(inst, false)? {
        let ux = inst.build_ux(&x)?;
        let d = hom_dim(&ux, &inst.w)?;
        let h_nonzero = inst.in_open_part(&x)?;
        let cell = match (d == 0, h_nonzero) {
            (true, true) => &mut table.hom_zero_h_nonzero,
            (true, false) => &mut table.hom_zero_h_zero,
            (false, true) => &mut table.hom_nonzero_h_nonzero,
            (false, false) => &mut table.hom_nonzero_h_zero,
        };
        *cell += 1;
        if (d == 0) != h_nonzero {
            violations.push(PointHom {
                point: x,
                hom_dim: d,
                h_nonzero,
            });
        }
    }
    Ok(LemmaReport {
        hom_v_w,
        hom_w_v,
        end_v,
        end_w,
        part_i,
        part_ii: Some(table.violations() == 0),
        truth_table: Some(table),
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiReport {
    pub grass_count: usize,
    pub e_grass_count: usize,
    pub open_count: usize,
    pub v_in_e: bool,
    /// Subrepresentations `U` with `V/U` outside `^⊥W`.
    pub quotient_failures: Vec<SubrepPoint>,
    pub matched: bool,
    pub mismatches: Vec<Mismatch>,
}

impl QuasiReport {
    pub fn holds(&self) -> bool {
        self.matched && self.v_in_e && self.quotient_failures.is_empty()
    }
}

/// Restricts to `E = ^⊥W` and checks the surviving subrepresentations against
/// the variety points where some inequation is nonzero. Also checks that `V`
/// and every quotient `V/U` lie in `E`.
pub fn verify_quasi_projective(inst: &EncodedInstance, cap: u128) -> Result<QuasiReport, EncoderError> {
    let pred = SubcatPredicate::hom_left_perp(inst.w.clone());
    let v_in_e = member(&pred, &inst.v)?;
    let all = enumerate_subreps(&inst.v, &point_dims(), cap)?;
    let mut quotient_failures = Vec::new();
    for u in &all {
        let (_, quot) = restrict_and_quotient(&inst.v, u)?;
        if !member(&pred, &quot)? {
            quotient_failures.push(u.clone());
        }
    }
    let targets = target_points(inst, true)?;
    let e_points = if v_in_e {
        exact_grassmannian_points(&inst.v, &point_dims(), &pred, cap)?
    } else {
        Vec::new()
    };
    let mismatches = match_points(inst, &e_points, &targets)?;
    Ok(QuasiReport {
        grass_count: all.len(),
        e_grass_count: e_points.len(),
        open_count: targets.len(),
        v_in_e,
        quotient_failures,
        matched: mismatches.is_empty() && e_points.len() == targets.len(),
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoder::{encode, encode_with};
    use crate::exactfield::FieldSpec;
    use crate::polyring::{parse_poly, NormalizeOptions, Polynomial};
    use crate::quiverrep::DEFAULT_CAP;

    fn polys(texts: &[&str], n: usize, field: FieldSpec) -> Vec<Polynomial> {
        texts.iter().map(|t| parse_poly(t, n, field).unwrap()).collect()
    }

    fn conic(field: FieldSpec, hs: &[&str]) -> EncodedInstance {
        encode(&polys(&["T0*T2 - T1^2"], 2, field), &polys(hs, 2, field), field).unwrap()
    }

    #[test]
    fn conic_bijection_counts() {
        for (p, expected) in [(3, 4), (5, 6)] {
            let r = verify_bijection(&conic(FieldSpec::prime(p).unwrap(), &["T0"]), DEFAULT_CAP).unwrap();
            assert_eq!((r.grass_count, r.variety_count), (expected, expected));
            assert!(r.matched, "{r:?}");
        }
    }

    #[test]
    fn single_point_bijection() {
        let f = FieldSpec::prime(7).unwrap();
        let inst = encode(&polys(&["T0"], 1, f), &polys(&["T1"], 1, f), f).unwrap();
        let r = verify_bijection(&inst, DEFAULT_CAP).unwrap();
        assert_eq!((r.grass_count, r.variety_count, r.matched), (1, 1, true));
    }

    #[test]
    fn lemma_on_the_conic() {
        let f3 = FieldSpec::prime(3).unwrap();
        let r = verify_lemma_hom(&conic(f3, &["T0"])).unwrap();
        assert!(r.part_i);
        let t = r.truth_table.clone().unwrap();
        assert_eq!(t.hom_zero_h_nonzero, 3);
        assert_eq!(t.hom_nonzero_h_zero, 1);
        assert_eq!(t.violations(), 0);
        assert!(r.holds());
        let rq = verify_lemma_hom(&conic(FieldSpec::RATIONALS, &["T0"])).unwrap();
        assert!(rq.part_i && rq.truth_table.is_none() && rq.holds());
    }

    #[test]
    fn quasi_projective_counts() {
        for (p, expected) in [(3, 3), (5, 5)] {
            let r = verify_quasi_projective(&conic(FieldSpec::prime(p).unwrap(), &["T0"]), DEFAULT_CAP).unwrap();
            assert_eq!((r.e_grass_count, r.open_count), (expected, expected));
            assert_eq!(r.grass_count, p as usize + 1);
            assert!(r.holds(), "{r:?}");
        }
        let f3 = FieldSpec::prime(3).unwrap();
        let r = verify_quasi_projective(&conic(f3, &["T0", "T1", "T2"]), DEFAULT_CAP).unwrap();
        assert_eq!(r.e_grass_count, 4);
        assert!(r.holds());
    }

    #[test]
    fn projective_mode_recovers_the_whole_variety() {
        let f5 = FieldSpec::prime(5).unwrap();
        let inst = encode_with(&polys(&["T0*T2 - T1^2"], 2, f5), &[], f5, NormalizeOptions { allow_projective: true }).unwrap();
        let r = verify_quasi_projective(&inst, DEFAULT_CAP).unwrap();
        assert_eq!((r.e_grass_count, r.open_count), (6, 6));
        assert!(r.holds());
    }
}
