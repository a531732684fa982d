//! Characters of the genus-0-base sectors `M_{0,d}/S_A` and their
//! compactifications, and the passage from characters to Poincaré
//! polynomials.

use num_bigint::BigInt;
use num_traits::Signed;

use super::closed::TraceTable;
use crate::admissible::AdmissibleDatum;
use crate::algebra::{BiGradedPoly, LPoly, QGradedPoly, Rational};
use crate::error::{Error, Result};
use crate::partition::CycleType;

fn check_pipeline(a: &AdmissibleDatum) -> Result<()> {
    if a.g_prime != 0 || a.connectedness_k() != 1 {
        return Err(Error::Unsupported(format!(
            "{a}: only connected sectors with g' = 0 are computed"
        )));
    }
    if a.total_branch() < 3 {
        return Err(Error::InvalidDatum(format!(
            "{a}: fewer than 3 branch points"
        )));
    }
    Ok(())
}

fn burnside(
    a: &AdmissibleDatum,
    what: &str,
    trace: impl Fn(&CycleType) -> Result<LPoly>,
) -> Result<LPoly> {
    let mut total = LPoly::zero();
    for class in a.young_classes() {
        let tr = trace(&class.cycle_type())?;
        total = &total + &tr.scale(&class.class_size);
    }
    total
        .div_scalar_exact(&a.young_order())
        .ok_or_else(|| Error::NonIntegralBurnside {
            context: format!("{what} of {a}"),
        })
}

/// Character of `H_c(M_A)`, the `S_A`-invariants of `H_c(M_{0,d})`.
pub fn chi_open(a: &AdmissibleDatum, table: &TraceTable) -> Result<LPoly> {
    check_pipeline(a)?;
    burnside(a, "open character", |t| table.open(t).cloned())
}

/// Character of `\bar M_{0,d}/S_A`, palindromic of degree `dim`.
pub fn chi_closed(a: &AdmissibleDatum, table: &TraceTable) -> Result<LPoly> {
    check_pipeline(a)?;
    let chi = burnside(a, "compactified character", |t| table.closed(t).cloned())?;
    let top = a.sector_dimension() as usize;
    if !chi.is_palindromic(top) {
        return Err(Error::NonPalindromic {
            chi: chi.to_string(),
            top,
        });
    }
    Ok(chi)
}

/// Purity for the open sector: `c_j L^j` sits in `H_c^{j+dim}` with
/// multiplicity `|c_j|` and must have sign `(-1)^{j+dim}`. Returns the
/// compactly supported polynomial `Pc` (terms `L^j t^k`) and the ordinary
/// one `PH`, with `H^i ≅ H_c^{2dim-i}` dual to it.
pub fn chi_to_poincare_open(chi: &LPoly, dim: i64) -> Result<(BiGradedPoly, BiGradedPoly)> {
    let mut pc = BiGradedPoly::new();
    for (j, c) in chi.coeffs().iter().enumerate() {
        if c == &BigInt::from(0) {
            continue;
        }
        let k = j as i64 + dim;
        let expected_negative = k.rem_euclid(2) == 1;
        if c.is_negative() != expected_negative {
            return Err(Error::SignViolation {
                chi: chi.to_string(),
                exponent: j,
            });
        }
        let mult: u64 = c.abs().try_into().expect("multiplicity fits in u64");
        pc.add_term(
            Rational::from_integer(j as i64),
            Rational::from_integer(k),
            mult,
        );
    }
    Ok((pc.clone(), dualize(&pc, dim)))
}

/// `L^j t^k` in `H_c` becomes `L^{dim-j} t^{2dim-k}` in `H`.
pub fn dualize(pc: &BiGradedPoly, dim: i64) -> BiGradedPoly {
    let mut ph = BiGradedPoly::new();
    let d = Rational::from_integer(dim);
    let two_d = Rational::from_integer(2 * dim);
    for (deg, m) in pc.iter() {
        ph.add_term(&d - &deg.l, &two_d - &deg.t, m);
    }
    ph
}

/// Closed sector: `L^j` goes to `t^{2j}`.
pub fn chi_to_poincare_closed(chi: &LPoly) -> Result<QGradedPoly> {
    let mut out = QGradedPoly::new();
    for (j, c) in chi.coeffs().iter().enumerate() {
        if c.is_negative() {
            return Err(Error::NegativeCoefficient(chi.to_string()));
        }
        if c == &BigInt::from(0) {
            continue;
        }
        let mult: u64 = c.try_into().expect("multiplicity fits in u64");
        out.add_term(Rational::from_integer(2 * j as i64), mult);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(n: u32, d: &[u32]) -> AdmissibleDatum {
        AdmissibleDatum::new(3, 0, n, d.to_vec()).unwrap()
    }

    fn table() -> TraceTable {
        TraceTable::build(8, 5).unwrap()
    }

    #[test]
    fn open_examples() {
        let t = table();
        assert_eq!(
            chi_open(&datum(2, &[8]), &t).unwrap(),
            LPoly::monomial(1, 5)
        );
        assert_eq!(
            chi_open(&datum(4, &[2, 3, 0]), &t).unwrap(),
            LPoly::from_coeffs(vec![0, -1, 1])
        );
        assert_eq!(
            chi_open(&datum(6, &[1, 0, 2, 0, 1]), &t).unwrap(),
            LPoly::from_coeffs(vec![-1, 1])
        );
        assert_eq!(
            chi_open(&datum(7, &[2, 0, 0, 0, 1, 0]), &t).unwrap(),
            LPoly::one()
        );
    }

    #[test]
    fn closed_examples() {
        let t = table();
        assert_eq!(
            chi_closed(&datum(3, &[4, 1]), &t).unwrap(),
            LPoly::from_coeffs(vec![1, 2, 1])
        );
        assert_eq!(
            chi_closed(&datum(4, &[2, 0, 2]), &t).unwrap(),
            LPoly::from_coeffs(vec![1, 1])
        );
        assert!(matches!(
            chi_closed(&datum(2, &[8]), &t),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn rejects_positive_base_genus() {
        let a = AdmissibleDatum::new(3, 1, 2, vec![4]).unwrap();
        assert!(matches!(chi_open(&a, &table()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn purity_examples() {
        let (pc, ph) = chi_to_poincare_open(&LPoly::monomial(1, 5), 5).unwrap();
        assert_eq!(
            pc.get(&Rational::from_integer(5), &Rational::from_integer(10)),
            1
        );
        assert_eq!(pc.total(), 1);
        assert_eq!(ph.specialize_l(), QGradedPoly::from_betti(&[1]));

        let (pc, ph) = chi_to_poincare_open(&LPoly::from_coeffs(vec![0, -1, 1]), 2).unwrap();
        assert_eq!(
            pc.get(&Rational::from_integer(2), &Rational::from_integer(4)),
            1
        );
        assert_eq!(
            pc.get(&Rational::from_integer(1), &Rational::from_integer(3)),
            1
        );
        assert_eq!(ph.specialize_l(), QGradedPoly::from_betti(&[1, 1]));

        let (_, ph) = chi_to_poincare_open(&LPoly::from_coeffs(vec![-1, 1]), 1).unwrap();
        assert_eq!(ph.specialize_l(), QGradedPoly::from_betti(&[1, 1]));
        assert_eq!(
            ph.get(&Rational::from_integer(1), &Rational::from_integer(1)),
            1
        );
    }

    #[test]
    fn purity_sign_violation() {
        assert!(matches!(
            chi_to_poincare_open(&LPoly::from_coeffs(vec![1, 1]), 1),
            Err(Error::SignViolation { exponent: 0, .. })
        ));
    }

    #[test]
    fn closed_purity_examples() {
        assert_eq!(
            chi_to_poincare_closed(&LPoly::from_coeffs(vec![1, 1])).unwrap(),
            QGradedPoly::from_betti(&[1, 0, 1])
        );
        assert_eq!(
            chi_to_poincare_closed(&LPoly::from_coeffs(vec![1, 3, 6, 6, 3, 1])).unwrap(),
            QGradedPoly::from_betti(&[1, 0, 3, 0, 6, 0, 6, 0, 3, 0, 1])
        );
        assert_eq!(
            chi_to_poincare_closed(&LPoly::one()).unwrap(),
            QGradedPoly::from_betti(&[1])
        );
        assert!(chi_to_poincare_closed(&LPoly::from_coeffs(vec![1, -1])).is_err());
    }
}
