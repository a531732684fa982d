//! Sector records and the assembled orbifold Poincaré polynomials.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::admissible::{connected_sectors, AdmissibleDatum, SectorShape};
use crate::age::age;
use crate::algebra::{BiGradedPoly, LPoly, QGradedPoly, Rational};
use crate::error::{Error, Result};
use crate::genus0::{
    chi_closed, chi_open, chi_to_poincare_closed, chi_to_poincare_open, dualize, TraceTable,
    TREE_CAP,
};

/// Genus for which the `g' > 0` sectors are known.
pub const SUPPORTED_GENUS: u32 = 3;

pub const UNSUPPORTED_GENUS_MSG: &str = "g′>0 sector cohomology unavailable";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Produced by the genus-0 counting pipeline.
    Computed,
    /// Hardcoded cohomology of a `g' > 0` sector.
    Builtin,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorRecord {
    pub datum: AdmissibleDatum,
    pub component: String,
    pub age: Rational,
    pub dim: i64,
    pub chi_open: Option<LPoly>,
    pub chi_closed: Option<LPoly>,
    /// `H_c` as `L^{weight/2} t^k` terms.
    pub pc: BiGradedPoly,
    /// Ordinary cohomology, same weight bookkeeping.
    pub ph: BiGradedPoly,
    /// Cohomology of the compactified sector, when known.
    pub ph_bar: Option<QGradedPoly>,
    pub provenance: Provenance,
}

impl SectorRecord {
    pub fn label(&self) -> String {
        self.datum.to_string()
    }
}

/// Record for a connected `g' = 0` sector. The compactified side is left
/// empty when the number of branch points exceeds the closed trace table.
pub fn computed_record(a: &AdmissibleDatum, table: &TraceTable) -> Result<SectorRecord> {
    let shape = SectorShape::of(a);
    let chi = chi_open(a, table)?;
    let dim = a.sector_dimension();
    let (pc, ph) = chi_to_poincare_open(&chi, dim)?;
    let (chi_bar, ph_bar) = if a.total_branch() as usize <= table.closed_max() {
        let c = chi_closed(a, table)?;
        let p = chi_to_poincare_closed(&c)?;
        (Some(c), Some(p))
    } else {
        (None, None)
    };
    Ok(SectorRecord {
        datum: a.clone(),
        component: shape.components[0].label(shape.k),
        age: age(a),
        dim,
        chi_open: Some(chi),
        chi_closed: chi_bar,
        pc,
        ph,
        ph_bar,
        provenance: Provenance::Computed,
    })
}

fn bi(terms: &[(i64, i64)]) -> BiGradedPoly {
    let mut p = BiGradedPoly::new();
    for &(l, t) in terms {
        p.add_term(Rational::from_integer(l), Rational::from_integer(t), 1);
    }
    p
}

fn special(gp: u32, n: u32, d: &[u32], pc: &[(i64, i64)], closed: Vec<i64>) -> SectorRecord {
    let datum = AdmissibleDatum::new(SUPPORTED_GENUS, gp, n, d.to_vec()).expect("valid datum");
    let shape = SectorShape::of(&datum);
    let dim = datum.sector_dimension();
    let pc = bi(pc);
    let chi_bar = LPoly::from_coeffs(closed);
    let ph_bar = chi_to_poincare_closed(&chi_bar).expect("nonnegative character");
    SectorRecord {
        component: shape.components[0].label(shape.k),
        age: age(&datum),
        dim,
        chi_open: None,
        chi_closed: Some(chi_bar),
        ph: dualize(&pc, dim),
        pc,
        ph_bar: Some(ph_bar),
        provenance: Provenance::Builtin,
        datum,
    }
}

/// The four genus-3 sectors with positive base genus.
pub fn builtin_special_sectors() -> Vec<SectorRecord> {
    vec![
        special(1, 2, &[4], &[(4, 8), (2, 5)], vec![1, 6, 9, 6, 1]),
        special(1, 3, &[1, 1], &[(2, 4), (1, 3), (0, 2)], vec![1, 3, 1]),
        special(1, 4, &[0, 2, 0], &[(2, 4), (1, 3), (0, 2)], vec![1, 3, 1]),
        special(2, 2, &[0], &[(3, 6), (2, 5)], vec![1, 4, 4, 1]),
    ]
}

/// Cohomology of the untwisted sector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmbientRecord {
    /// `H(M_g)` with weights.
    pub ph: BiGradedPoly,
    /// `H(\bar M_g)`.
    pub ph_bar: QGradedPoly,
}

/// Betti numbers of `M_3` by degree, and the weight of each class.
pub const M3_BETTI: [u64; 7] = [1, 0, 1, 0, 0, 0, 1];
pub const M3_WEIGHTS: [(i64, i64); 3] = [(0, 0), (1, 2), (6, 6)];
pub const M3BAR_BETTI: [u64; 13] = [1, 0, 3, 0, 7, 0, 10, 0, 7, 0, 3, 0, 1];

pub fn builtin_ambient() -> AmbientRecord {
    AmbientRecord {
        ph: bi(&M3_WEIGHTS),
        ph_bar: QGradedPoly::from_betti(&M3BAR_BETTI),
    }
}

/// Sizes `(open, closed)` of the trace table needed for genus `g`.
pub fn table_sizes(g: u32) -> Result<(usize, usize)> {
    let max_d = connected_sectors(g)?
        .iter()
        .filter(|s| s.genus0_pipeline)
        .map(|s| s.total_branch as usize)
        .max()
        .unwrap_or(3);
    Ok((max_d.max(3), max_d.clamp(3, TREE_CAP)))
}

/// Records for every connected `g' = 0` sector, in canonical order.
pub fn genus0_records(g: u32, table: &TraceTable) -> Result<Vec<SectorRecord>> {
    let shapes: Vec<SectorShape> = connected_sectors(g)?
        .into_iter()
        .filter(|s| s.genus0_pipeline)
        .collect();
    shapes
        .par_iter()
        .map(|s| computed_record(&s.datum, table))
        .collect()
}

/// All twisted sector records of `M_g`; only available for genus 3.
pub fn sector_records(g: u32, table: &TraceTable) -> Result<Vec<SectorRecord>> {
    if g != SUPPORTED_GENUS {
        return Err(Error::Unsupported(UNSUPPORTED_GENUS_MSG.to_string()));
    }
    let mut out = genus0_records(g, table)?;
    out.extend(builtin_special_sectors());
    out.sort_by(|a, b| a.datum.cmp(&b.datum));
    Ok(out)
}

fn twisted_open(records: &[SectorRecord]) -> QGradedPoly {
    let mut out = QGradedPoly::new();
    for r in records {
        let shift = &r.age + &r.age;
        out.add_assign(&r.ph.specialize_l().shift(&shift));
    }
    out
}

fn twisted_closed(records: &[SectorRecord]) -> Result<QGradedPoly> {
    let mut out = QGradedPoly::new();
    for r in records {
        let ph_bar = r.ph_bar.as_ref().ok_or_else(|| {
            Error::MissingRecord(format!("compactified cohomology of {}", r.datum))
        })?;
        out.add_assign(&ph_bar.shift(&(&r.age + &r.age)));
    }
    Ok(out)
}

fn twisted_bigraded(records: &[SectorRecord]) -> BiGradedPoly {
    let mut out = BiGradedPoly::new();
    for r in records {
        out.add_assign(&r.ph.shift(&r.age, &(&r.age + &r.age)));
    }
    out
}

/// `P_CR`: ambient plus every sector shifted by twice its age.
pub fn cr_poincare(
    records: &[SectorRecord],
    ambient: &AmbientRecord,
    compactified: bool,
) -> Result<QGradedPoly> {
    if compactified {
        let mut p = ambient.ph_bar.clone();
        p.add_assign(&twisted_closed(records)?);
        Ok(p)
    } else {
        let mut p = ambient.ph.specialize_l();
        p.add_assign(&twisted_open(records));
        Ok(p)
    }
}

/// Hodge-refined `P_CR`: a class of weight `2w` in `H^i(Y)` gives
/// `L^{w + a(Y)} t^{i + 2a(Y)}`.
pub fn cr_bigraded(records: &[SectorRecord], ambient: &AmbientRecord) -> BiGradedPoly {
    let mut out = ambient.ph.clone();
    out.add_assign(&twisted_bigraded(records));
    out
}

/// Palindromic about `top`; vacuous on the empty polynomial.
pub fn duality_audit(poly: &QGradedPoly, top: &Rational) -> bool {
    poly.is_palindromic(top)
}

/// Recovers the untwisted contribution by subtracting the twisted sectors
/// from the full targets.
pub fn derive_ambient(
    records: &[SectorRecord],
    target_bigraded: &BiGradedPoly,
    target_closed: &QGradedPoly,
    dim: i64,
) -> Result<AmbientRecord> {
    let ph = target_bigraded
        .checked_sub(&twisted_bigraded(records))
        .map_err(|deg| {
            Error::OracleMismatch(format!(
                "negative ambient multiplicity at L^{} t^{}",
                deg.l, deg.t
            ))
        })?;
    let ph_bar = target_closed
        .checked_sub(&twisted_closed(records)?)
        .map_err(|deg| {
            Error::OracleMismatch(format!(
                "negative compactified ambient multiplicity at t^{deg}"
            ))
        })?;
    if !ph.specialize_l().has_integer_degrees() || !ph_bar.has_integer_degrees() {
        return Err(Error::OracleMismatch(
            "ambient cohomology has fractional degrees".to_string(),
        ));
    }
    if !ph_bar.is_palindromic(&Rational::from_integer(2 * dim)) {
        return Err(Error::OracleMismatch(
            "compactified ambient cohomology is not palindromic".to_string(),
        ));
    }
    Ok(AmbientRecord { ph, ph_bar })
}

/// JSON shape of `cr-poly`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrReport {
    pub genus: u32,
    pub compactified: bool,
    pub polynomial: QGradedPoly,
    pub total_dim: u64,
}

impl CrReport {
    pub fn new(genus: u32, compactified: bool, polynomial: QGradedPoly) -> Self {
        CrReport {
            genus,
            compactified,
            total_dim: polynomial.total(),
            polynomial,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn special_sector_examples() {
        let recs = builtin_special_sectors();
        let ages: Vec<Rational> = recs.iter().map(|r| r.age.clone()).collect();
        assert_eq!(ages, vec![r(1, 1), r(2, 1), r(2, 1), r(3, 2)]);
        let ph: Vec<QGradedPoly> = recs.iter().map(|r| r.ph.specialize_l()).collect();
        assert_eq!(ph[0], QGradedPoly::from_betti(&[1, 0, 0, 1]));
        assert_eq!(ph[1], QGradedPoly::from_betti(&[1, 1, 1]));
        assert_eq!(ph[2], QGradedPoly::from_betti(&[1, 1, 1]));
        assert_eq!(ph[3], QGradedPoly::from_betti(&[1, 1]));
        // the weight-4 class of H^3(A)
        assert_eq!(recs[0].ph.get(&r(2, 1), &r(3, 1)), 1);
        for rec in &recs {
            let top = Rational::from_integer(2 * rec.dim);
            assert!(
                rec.ph_bar.as_ref().unwrap().is_palindromic(&top),
                "{}",
                rec.datum
            );
            assert_eq!(rec.provenance, Provenance::Builtin);
        }
        assert_eq!(recs[2].component, "order_k");
    }

    #[test]
    fn ambient_constants_are_consistent() {
        let amb = builtin_ambient();
        assert_eq!(amb.ph.specialize_l(), QGradedPoly::from_betti(&M3_BETTI));
        assert!(duality_audit(&amb.ph_bar, &r(12, 1)));
        assert_eq!(amb.ph_bar.total(), 32);
    }

    #[test]
    fn duality_audit_examples() {
        assert!(duality_audit(&QGradedPoly::new(), &r(12, 1)));
        assert!(!duality_audit(&QGradedPoly::from_betti(&[1, 1]), &r(12, 1)));
    }

    #[test]
    fn other_genera_are_refused() {
        let table = TraceTable::build(3, 3).unwrap();
        let err = sector_records(4, &table).unwrap_err();
        assert_eq!(err.to_string(), UNSUPPORTED_GENUS_MSG);
    }

    #[test]
    fn report_json_shape() {
        let rep = CrReport::new(
            3,
            false,
            QGradedPoly::from_terms([(r(0, 1), 1), (r(10, 3), 2)]),
        );
        assert_eq!(
            serde_json::to_string(&rep).unwrap(),
            r#"{"genus":3,"compactified":false,"polynomial":[{"deg":"0","mult":1},{"deg":"10/3","mult":2}],"total_dim":3}"#
        );
        let back: CrReport = serde_json::from_str(&serde_json::to_string(&rep).unwrap()).unwrap();
        assert_eq!(back, rep);
    }
}
