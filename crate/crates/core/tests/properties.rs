use std::sync::OnceLock;

use proptest::prelude::*;

use inertia_core::admissible::{connected_sectors, AdmissibleDatum, DatumRecord, SectorShape};
use inertia_core::age::{age, age_by_branch, age_by_weight, duality_defect, sigma_indicator};
use inertia_core::algebra::{BiGradedPoly, QGradedPoly, Rational};
use inertia_core::catalog::{sector_records, table_sizes, CrReport, SectorRecord};
use inertia_core::genus0::{chi_closed, chi_open, trace_closed, TraceTable};
use inertia_core::latex::{bigraded_to_latex, parse_poly, qgraded_to_latex};

fn sectors(g: u32) -> &'static [SectorShape] {
    static CACHE: OnceLock<Vec<Vec<SectorShape>>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        (0..=6)
            .map(|g| {
                if g < 2 {
                    Vec::new()
                } else {
                    connected_sectors(g).unwrap()
                }
            })
            .collect()
    });
    &all[g as usize]
}

fn table() -> &'static TraceTable {
    static TABLE: OnceLock<TraceTable> = OnceLock::new();
    TABLE.get_or_init(|| TraceTable::build(10, 8).unwrap())
}

fn genus3_records() -> &'static [SectorRecord] {
    static RECORDS: OnceLock<Vec<SectorRecord>> = OnceLock::new();
    RECORDS.get_or_init(|| {
        let (o, c) = table_sizes(3).unwrap();
        sector_records(3, &TraceTable::build(o, c).unwrap()).unwrap()
    })
}

fn arb_sector() -> impl Strategy<Value = AdmissibleDatum> {
    (2u32..=6, any::<prop::sample::Index>()).prop_map(|(g, i)| i.get(sectors(g)).datum.clone())
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (0i64..60, 1i64..15).prop_map(|(n, d)| Rational::new(n, d))
}

fn arb_qgraded() -> impl Strategy<Value = QGradedPoly> {
    prop::collection::vec((arb_rational(), 1u64..6), 1..10).prop_map(QGradedPoly::from_terms)
}

fn arb_bigraded() -> impl Strategy<Value = BiGradedPoly> {
    prop::collection::vec((arb_rational(), arb_rational(), 1u64..6), 1..10).prop_map(|v| {
        let mut p = BiGradedPoly::new();
        for (l, t, m) in v {
            p.add_term(l, t, m);
        }
        p
    })
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn age_duality(a in arb_sector()) {
        prop_assert!(duality_defect(&a, sigma_indicator).is_zero());
        let total = &age(&a) + &age(&a.involution());
        prop_assert_eq!(total, Rational::from_integer(3 * a.g as i64 - 3 - a.sector_dimension()));
    }

    #[test]
    fn age_formulas_agree(a in arb_sector()) {
        prop_assert_eq!(age_by_branch(&a, sigma_indicator), age_by_weight(&a, sigma_indicator));
    }

    #[test]
    fn age_is_nonnegative_and_bounded(a in arb_sector()) {
        let x = age(&a);
        prop_assert!(!x.is_negative());
        prop_assert!(x <= Rational::from_integer(3 * a.g as i64 - 3 - a.sector_dimension()));
    }

    #[test]
    fn involution_preserves_shape(a in arb_sector()) {
        let b = a.involution();
        prop_assert_eq!(b.involution(), a.clone());
        prop_assert_eq!(b.sector_dimension(), a.sector_dimension());
        prop_assert_eq!(b.connectedness_k(), a.connectedness_k());
    }

    #[test]
    fn burnside_integrality(a in arb_sector()) {
        let s = SectorShape::of(&a);
        prop_assume!(s.genus0_pipeline && (s.total_branch as usize) <= table().closed_max());
        let open = chi_open(&a, table()).unwrap();
        prop_assert_eq!(open.degree(), Some(s.dimension as usize));
        let closed = chi_closed(&a, table()).unwrap();
        prop_assert!(closed.is_palindromic(s.dimension as usize));
        prop_assert!(closed.has_nonnegative_coeffs());
    }

    #[test]
    fn closed_trace_is_a_class_function(perm in (4usize..=7).prop_flat_map(arb_perm), conj in any::<prop::sample::Index>()) {
        let n = perm.len();
        let tau = {
            let mut t: Vec<usize> = (0..n).collect();
            t.rotate_left(conj.index(n));
            t
        };
        // tau perm tau^-1
        let mut other = vec![0; n];
        for i in 0..n {
            other[tau[i]] = tau[perm[i]];
        }
        prop_assert_eq!(trace_closed(&perm).unwrap(), trace_closed(&other).unwrap());
    }

    #[test]
    fn datum_json_round_trip(a in arb_sector()) {
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<AdmissibleDatum>(&s).unwrap(), a.clone());
        let r = SectorShape::of(&a).record();
        let s = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(serde_json::from_str::<DatumRecord>(&s).unwrap(), r);
    }

    #[test]
    fn sector_record_json_round_trip(i in any::<prop::sample::Index>()) {
        let r = i.get(genus3_records());
        let s = serde_json::to_string_pretty(r).unwrap();
        prop_assert_eq!(&serde_json::from_str::<SectorRecord>(&s).unwrap(), r);
    }

    #[test]
    fn report_json_round_trip(p in arb_qgraded(), compactified in any::<bool>()) {
        let report = CrReport::new(3, compactified, p);
        let s = serde_json::to_string(&report).unwrap();
        prop_assert_eq!(serde_json::from_str::<CrReport>(&s).unwrap(), report);
    }

    #[test]
    fn latex_round_trip(p in arb_qgraded()) {
        let back = parse_poly(&qgraded_to_latex(&p)).unwrap().to_qgraded().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn bigraded_latex_round_trip(p in arb_bigraded()) {
        let back = parse_poly(&bigraded_to_latex(&p)).unwrap().to_bigraded().unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn trace_table_json_round_trip() {
    let t = TraceTable::build(7, 6).unwrap();
    let s = t.to_json().unwrap();
    let back = TraceTable::from_json(&s).unwrap();
    assert_eq!(back.to_json().unwrap(), s);
}
