//! Age (degree-shifting number) of a twisted sector of `M_g`.
//!
//! Two algebraically equivalent closed forms are implemented, one summing
//! over monodromy classes first and one over eigenvalue weights first; the
//! public [`age`] asserts that they agree.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::admissible::{connected_sectors, AdmissibleDatum};
use crate::algebra::Rational;
use crate::error::Result;

/// Rule deciding whether a branch point of monodromy `i` contributes to the
/// weight-`k` eigenspace. Pluggable so that self-tests can run against a
/// deliberately broken rule.
pub type SigmaRule = fn(k: u32, i: u32, n: u32) -> u32;

/// 0 if `k i + gcd(i, N) ≡ 0 (mod N)`, 1 otherwise.
pub fn sigma_indicator(k: u32, i: u32, n: u32) -> u32 {
    debug_assert!((1..n).contains(&k) && (1..n).contains(&i));
    if (k as u64 * i as u64 + i.gcd(&n) as u64) % n as u64 == 0 {
        0
    } else {
        1
    }
}

fn frac(num: u64, den: u32) -> Rational {
    Rational::new((num % den as u64) as i64, den as i64)
}

/// `(3g'-3)(N-1)/2 + (1/N) Σ_i d_i Σ_k k ({ki/N} + σ(k,i))`
pub fn age_by_branch(a: &AdmissibleDatum, sigma: SigmaRule) -> Rational {
    let n = a.n;
    let head = Rational::new((3 * a.g_prime as i64 - 3) * (n as i64 - 1), 2);
    let mut inner = Rational::zero();
    for (i, di) in a.branch().filter(|&(_, di)| di > 0) {
        let mut per_point = Rational::zero();
        for k in 1..n {
            let term = frac(k as u64 * i as u64, n) + Rational::from_integer(sigma(k, i, n) as i64);
            per_point += &(Rational::from_integer(k as i64) * term);
        }
        inner += &(Rational::from_integer(di as i64) * per_point);
    }
    head + inner / Rational::from_integer(n as i64)
}

/// `(1/N) Σ_k k (3g'-3 + Σ_{σ(k,i)=1} d_i + Σ_i {ki/N} d_i)`
pub fn age_by_weight(a: &AdmissibleDatum, sigma: SigmaRule) -> Rational {
    let n = a.n;
    let mut total = Rational::zero();
    for k in 1..n {
        let mut bracket = Rational::from_integer(3 * a.g_prime as i64 - 3);
        for (i, di) in a.branch() {
            if sigma(k, i, n) == 1 {
                bracket += &Rational::from_integer(di as i64);
            }
            bracket += &(frac(k as u64 * i as u64, n) * Rational::from_integer(di as i64));
        }
        total += &(Rational::from_integer(k as i64) * bracket);
    }
    total / Rational::from_integer(n as i64)
}

pub fn age_with(a: &AdmissibleDatum, sigma: SigmaRule) -> Rational {
    let by_branch = age_by_branch(a, sigma);
    let by_weight = age_by_weight(a, sigma);
    assert_eq!(by_branch, by_weight, "age formulas disagree on {a}");
    by_branch
}

pub fn age(a: &AdmissibleDatum) -> Rational {
    age_with(a, sigma_indicator)
}

/// Ages of every connected twisted sector of `M_g`.
pub fn age_table(g: u32) -> Result<BTreeMap<AdmissibleDatum, Rational>> {
    Ok(connected_sectors(g)?
        .into_iter()
        .map(|s| {
            let a = age(&s.datum);
            (s.datum, a)
        })
        .collect())
}

/// `age(A) + age(ι A) = (3g - 3) - dim(A)`.
pub fn duality_defect(a: &AdmissibleDatum, sigma: SigmaRule) -> Rational {
    let lhs = age_with(a, sigma) + age_with(&a.involution(), sigma);
    let rhs = Rational::from_integer(3 * a.g as i64 - 3 - a.sector_dimension());
    lhs - rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(g: u32, gp: u32, n: u32, d: &[u32]) -> AdmissibleDatum {
        AdmissibleDatum::new(g, gp, n, d.to_vec()).unwrap()
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_indicator(1, 1, 2), 0);
        assert_eq!(sigma_indicator(1, 1, 3), 1);
        assert_eq!(sigma_indicator(2, 1, 3), 0);
    }

    #[test]
    fn age_examples() {
        assert_eq!(age(&datum(3, 0, 2, &[8])), Rational::new(1, 2));
        assert_eq!(age(&datum(3, 0, 3, &[4, 1])), Rational::new(5, 3));
        assert_eq!(
            age(&datum(3, 0, 7, &[2, 0, 0, 0, 1, 0])),
            Rational::new(20, 7)
        );
        assert_eq!(age(&datum(3, 2, 2, &[0])), Rational::new(3, 2));
        assert_eq!(age(&datum(3, 1, 3, &[1, 1])), Rational::new(2, 1));
        assert_eq!(age(&datum(3, 1, 2, &[4])), Rational::new(1, 1));
        assert_eq!(age(&datum(3, 1, 4, &[0, 2, 0])), Rational::new(2, 1));
        // the hyperelliptic involution acts trivially on the tangent space
        // of M_2, and duality forces twice its age to be 0
        assert_eq!(age(&datum(2, 0, 2, &[6])), Rational::zero());
    }

    #[test]
    fn table_covers_inverse_pairs() {
        let table = age_table(3).unwrap();
        assert_eq!(table.len(), 47);
        for a in table.keys() {
            assert!(table.contains_key(&a.involution()), "{a}");
        }
    }

    #[test]
    fn duality_spot_values() {
        for a in [
            datum(3, 0, 3, &[4, 1]),
            datum(3, 0, 2, &[8]),
            datum(3, 2, 2, &[0]),
        ] {
            assert!(duality_defect(&a, sigma_indicator).is_zero(), "{a}");
        }
    }

    #[test]
    fn sabotaged_sigma_breaks_duality() {
        fn always_one(_: u32, _: u32, _: u32) -> u32 {
            1
        }
        let broken = age_table(3)
            .unwrap()
            .keys()
            .filter(|a| !duality_defect(a, always_one).is_zero())
            .count();
        assert!(broken > 0);
    }
}
