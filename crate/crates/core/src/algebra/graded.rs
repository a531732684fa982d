//! Polynomials with rational exponents and nonnegative multiplicities.
//!
//! [`QGradedPoly`] carries a single `t`-grading (orbifold Poincaré
//! polynomials); [`BiGradedPoly`] additionally tracks the Tate weight as an
//! `L`-exponent, which is what the Hodge-refined displays need.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Rational;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct QGradedPoly {
    terms: BTreeMap<Rational, u64>,
}

impl QGradedPoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (Rational, u64)>>(terms: I) -> Self {
        let mut p = Self::new();
        for (d, m) in terms {
            p.add_term(d, m);
        }
        p
    }

    /// Integer-degree polynomial from a Betti vector `b[i] t^i`.
    pub fn from_betti(betti: &[u64]) -> Self {
        Self::from_terms(
            betti
                .iter()
                .enumerate()
                .map(|(i, &m)| (Rational::from_integer(i as i64), m)),
        )
    }

    pub fn add_term(&mut self, degree: Rational, mult: u64) {
        if mult == 0 {
            return;
        }
        *self.terms.entry(degree).or_insert(0) += mult;
    }

    pub fn get(&self, degree: &Rational) -> u64 {
        self.terms.get(degree).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Rational, u64)> {
        self.terms.iter().map(|(d, &m)| (d, m))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Sum of all multiplicities (the polynomial evaluated at `t = 1`).
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn max_degree(&self) -> Option<&Rational> {
        self.terms.keys().next_back()
    }

    /// Moves every degree `d` to `d + delta`.
    pub fn shift(&self, delta: &Rational) -> QGradedPoly {
        QGradedPoly {
            terms: self.terms.iter().map(|(d, &m)| (d + delta, m)).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &QGradedPoly) {
        for (d, m) in other.iter() {
            self.add_term(d.clone(), m);
        }
    }

    /// `self - other`, or `Err(degree)` naming the first degree that would go
    /// negative.
    pub fn checked_sub(&self, other: &QGradedPoly) -> Result<QGradedPoly, Rational> {
        let mut out = self.clone();
        for (d, m) in other.iter() {
            let have = out.get(d);
            if have < m {
                return Err(d.clone());
            }
            if have == m {
                out.terms.remove(d);
            } else {
                out.terms.insert(d.clone(), have - m);
            }
        }
        Ok(out)
    }

    /// `mult(d) == mult(top - d)` for every degree present.
    pub fn is_palindromic(&self, top: &Rational) -> bool {
        self.terms.iter().all(|(d, &m)| self.get(&(top - d)) == m)
    }

    pub fn has_integer_degrees(&self) -> bool {
        self.terms.keys().all(Rational::is_integer)
    }
}

impl fmt::Display for QGradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(d, m)| {
                let mono = if d.is_zero() {
                    String::new()
                } else if *d == Rational::one() {
                    "t".to_string()
                } else {
                    format!("t^{{{d}}}")
                };
                match (m, mono.is_empty()) {
                    (_, true) => m.to_string(),
                    (1, false) => mono,
                    _ => format!("{m}{mono}"),
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for QGradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QGradedPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct QTerm {
    deg: Rational,
    mult: u64,
}

impl Serialize for QGradedPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter().map(|(d, m)| QTerm {
            deg: d.clone(),
            mult: m,
        }))
    }
}

impl<'de> Deserialize<'de> for QGradedPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<QTerm>::deserialize(deserializer)?;
        Ok(QGradedPoly::from_terms(
            raw.into_iter().map(|t| (t.deg, t.mult)),
        ))
    }
}

/// Bidegree of a term `L^l t^t`; ordered by `t` first so that displays
/// group naturally by cohomological degree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BiDegree {
    pub t: Rational,
    pub l: Rational,
}

impl BiDegree {
    pub fn new(l: Rational, t: Rational) -> Self {
        BiDegree { t, l }
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiGradedPoly {
    terms: BTreeMap<BiDegree, u64>,
}

impl BiGradedPoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, l: Rational, t: Rational, mult: u64) {
        if mult == 0 {
            return;
        }
        *self.terms.entry(BiDegree::new(l, t)).or_insert(0) += mult;
    }

    pub fn get(&self, l: &Rational, t: &Rational) -> u64 {
        self.terms
            .get(&BiDegree::new(l.clone(), t.clone()))
            .copied()
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BiDegree, u64)> {
        self.terms.iter().map(|(k, &m)| (k, m))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn shift(&self, dl: &Rational, dt: &Rational) -> BiGradedPoly {
        BiGradedPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, &m)| (BiDegree::new(&k.l + dl, &k.t + dt), m))
                .collect(),
        }
    }

    pub fn add_assign(&mut self, other: &BiGradedPoly) {
        for (k, m) in other.iter() {
            self.add_term(k.l.clone(), k.t.clone(), m);
        }
    }

    pub fn checked_sub(&self, other: &BiGradedPoly) -> Result<BiGradedPoly, BiDegree> {
        let mut out = self.clone();
        for (k, m) in other.iter() {
            let have = out.terms.get(k).copied().unwrap_or(0);
            if have < m {
                return Err(k.clone());
            }
            if have == m {
                out.terms.remove(k);
            } else {
                out.terms.insert(k.clone(), have - m);
            }
        }
        Ok(out)
    }

    /// Sets `L = 1`, keeping only the `t`-grading.
    pub fn specialize_l(&self) -> QGradedPoly {
        QGradedPoly::from_terms(self.iter().map(|(k, m)| (k.t.clone(), m)))
    }
}

impl fmt::Display for BiGradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(k, m)| {
                let mut s = String::new();
                if m != 1 {
                    s.push_str(&m.to_string());
                }
                if !k.l.is_zero() {
                    s.push_str(&format!("L^{{{}}}", k.l));
                }
                if !k.t.is_zero() {
                    s.push_str(&format!("t^{{{}}}", k.t));
                }
                if s.is_empty() {
                    s.push('1');
                }
                s
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for BiGradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiGradedPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct BiTerm {
    l: Rational,
    deg: Rational,
    mult: u64,
}

impl Serialize for BiGradedPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter().map(|(k, m)| BiTerm {
            l: k.l.clone(),
            deg: k.t.clone(),
            mult: m,
        }))
    }
}

impl<'de> Deserialize<'de> for BiGradedPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<BiTerm>::deserialize(deserializer)?;
        let mut p = BiGradedPoly::new();
        for t in raw {
            p.add_term(t.l, t.deg, t.mult);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn shift_examples() {
        let p = QGradedPoly::from_terms([(r(0, 1), 1)]);
        assert_eq!(p.shift(&r(1, 2)), QGradedPoly::from_terms([(r(1, 2), 1)]));

        let bar_a = QGradedPoly::from_betti(&[1, 0, 6, 0, 9, 0, 6, 0, 1]);
        let shifted = bar_a.shift(&r(1, 1));
        let expected = QGradedPoly::from_terms(
            [(1, 1), (3, 6), (5, 9), (7, 6), (9, 1)].map(|(d, m)| (r(d, 1), m)),
        );
        assert_eq!(shifted, expected);

        assert!(QGradedPoly::new().shift(&r(3, 1)).is_empty());
    }

    #[test]
    fn palindromic_examples() {
        let p = QGradedPoly::from_betti(&[1, 3, 1]);
        assert!(p.is_palindromic(&r(2, 1)));
        let q = QGradedPoly::from_betti(&[1, 2]);
        assert!(!q.is_palindromic(&r(1, 1)));
        assert!(QGradedPoly::new().is_palindromic(&r(12, 1)));
    }

    #[test]
    fn checked_sub_reports_degree() {
        let a = QGradedPoly::from_betti(&[1, 2]);
        let b = QGradedPoly::from_betti(&[0, 3]);
        assert_eq!(a.checked_sub(&b), Err(r(1, 1)));
        assert_eq!(
            a.checked_sub(&QGradedPoly::from_betti(&[1])).unwrap(),
            QGradedPoly::from_betti(&[0, 2])
        );
    }

    #[test]
    fn json_shape() {
        let p = QGradedPoly::from_terms([(r(7, 2), 1), (r(0, 1), 2)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[{"deg":"0","mult":2},{"deg":"7/2","mult":1}]"#);
        let back: QGradedPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn bigraded_specializes() {
        let mut b = BiGradedPoly::new();
        b.add_term(r(1, 2), r(1, 1), 1);
        b.add_term(r(1, 1), r(2, 1), 1);
        b.add_term(r(2, 1), r(2, 1), 1);
        let p = b.specialize_l();
        assert_eq!(p.get(&r(2, 1)), 2);
        assert_eq!(p.total(), 3);
        let s = serde_json::to_string(&b).unwrap();
        let back: BiGradedPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, b);
    }

    fn arb_poly() -> impl Strategy<Value = QGradedPoly> {
        prop::collection::vec(((0i64..40), (1i64..15), (1u64..5)), 0..8)
            .prop_map(|v| QGradedPoly::from_terms(v.into_iter().map(|(n, d, m)| (r(n, d), m))))
    }

    proptest! {
        #[test]
        fn shifts_compose(p in arb_poly(), a in (0i64..20, 1i64..10), b in (0i64..20, 1i64..10)) {
            let x = r(a.0, a.1);
            let y = r(b.0, b.1);
            prop_assert_eq!(p.shift(&x).shift(&y), p.shift(&(&x + &y)));
        }

        #[test]
        fn json_round_trip(p in arb_poly()) {
            let s = serde_json::to_string(&p).unwrap();
            let back: QGradedPoly = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn rational_sum_is_canonical(a in -100i64..100, b in 1i64..50, c in -100i64..100, d in 1i64..50) {
            let direct = &r(a, b) + &r(c, d);
            let common = r(a * d + c * b, b * d);
            prop_assert_eq!(direct.to_string(), common.to_string());
        }
    }
}
