//! A small reader and writer for LaTeX polynomial displays in `L` and `t`.
//!
//! The reader understands sums, juxtaposed products, parenthesised factors
//! with an optional integer power, integer coefficients, exponents written
//! as `^d`, `^{n}`, `^{a/b}` or `^{\frac{a}{b}}`, and the shorthand
//! `\Lt{a}{b}` for `L^a t^b`. Alignment marks (`&`, `\\`) and a trailing
//! period are ignored.

use std::collections::BTreeMap;

use crate::admissible::AdmissibleDatum;
use crate::algebra::{BiDegree, BiGradedPoly, LPoly, QGradedPoly, Rational};
use crate::catalog::SectorRecord;
use crate::error::{Error, Result};

/// Signed polynomial in `L` and `t` with rational exponents.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LtPoly {
    terms: BTreeMap<BiDegree, i64>,
}

impl LtPoly {
    pub fn constant(c: i64) -> Self {
        Self::monomial(c, Rational::zero(), Rational::zero())
    }

    pub fn monomial(c: i64, l: Rational, t: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(BiDegree::new(l, t), c);
        }
        LtPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BiDegree, i64)> {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    fn add_term(&mut self, deg: BiDegree, c: i64) {
        let e = self.terms.entry(deg.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&deg);
        }
    }

    fn add(&self, other: &LtPoly, sign: i64) -> LtPoly {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k.clone(), sign * c);
        }
        out
    }

    fn mul(&self, other: &LtPoly) -> LtPoly {
        let mut out = LtPoly::default();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                out.add_term(BiDegree::new(&a.l + &b.l, &a.t + &b.t), x * y);
            }
        }
        out
    }

    pub fn to_bigraded(&self) -> Result<BiGradedPoly> {
        let mut out = BiGradedPoly::new();
        for (k, c) in self.terms() {
            if c < 0 {
                return Err(Error::Parse(format!("negative multiplicity {c}")));
            }
            out.add_term(k.l.clone(), k.t.clone(), c as u64);
        }
        Ok(out)
    }

    pub fn to_qgraded(&self) -> Result<QGradedPoly> {
        if self.terms.keys().any(|k| !k.l.is_zero()) {
            return Err(Error::Parse("unexpected L in a t-polynomial".into()));
        }
        Ok(self.to_bigraded()?.specialize_l())
    }

    pub fn to_lpoly(&self) -> Result<LPoly> {
        let mut out = LPoly::zero();
        for (k, c) in self.terms() {
            let exp = k.l.to_i64().filter(|&e| e >= 0 && k.l.is_integer());
            match exp {
                Some(e) if k.t.is_zero() => out = &out + &LPoly::monomial(c, e as usize),
                _ => {
                    return Err(Error::Parse(format!(
                        "L^{} t^{} is not a polynomial term",
                        k.l, k.t
                    )))
                }
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, what: &str) -> Result<T> {
        Err(Error::Parse(format!("{what} at byte {}", self.pos)))
    }

    fn skip_noise(&mut self) {
        loop {
            match self.s.get(self.pos) {
                Some(b' ' | b'\t' | b'\n' | b'\r' | b'&' | b'.') => self.pos += 1,
                Some(b'\\') if self.s.get(self.pos + 1) == Some(&b'\\') => self.pos += 2,
                _ => return,
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_noise();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c as char))
        }
    }

    fn starts_with(&self, lit: &str) -> bool {
        self.s[self.pos..].starts_with(lit.as_bytes())
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_noise();
        let neg = self.s.get(self.pos) == Some(&b'-');
        if neg {
            self.pos += 1;
        }
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let v: i64 = std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| Error::Parse("integer overflow".into()))?;
        Ok(if neg { -v } else { v })
    }

    /// Contents of a brace group: `n`, `a/b` or `\frac{a}{b}`.
    fn braced_rational(&mut self) -> Result<Rational> {
        self.eat(b'{')?;
        self.skip_noise();
        let value = if self.starts_with("\\frac") {
            self.pos += 5;
            self.eat(b'{')?;
            let a = self.integer()?;
            self.eat(b'}')?;
            self.eat(b'{')?;
            let b = self.integer()?;
            self.eat(b'}')?;
            Rational::new(a, b)
        } else {
            let a = self.integer()?;
            if self.peek() == Some(b'/') {
                self.pos += 1;
                let b = self.integer()?;
                Rational::new(a, b)
            } else {
                Rational::from_integer(a)
            }
        };
        self.eat(b'}')?;
        Ok(value)
    }

    fn exponent(&mut self) -> Result<Rational> {
        if self.peek() != Some(b'^') {
            return Ok(Rational::one());
        }
        self.pos += 1;
        match self.peek() {
            Some(b'{') => self.braced_rational(),
            Some(c) if c.is_ascii_digit() => {
                self.pos += 1;
                Ok(Rational::from_integer((c - b'0') as i64))
            }
            _ => self.err("bad exponent"),
        }
    }

    fn starts_factor(&mut self) -> bool {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => true,
            Some(b'L' | b't' | b'(') => true,
            Some(b'\\') => self.starts_with("\\Lt"),
            _ => false,
        }
    }

    fn factor(&mut self) -> Result<LtPoly> {
        let zero = Rational::zero;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(LtPoly::constant(self.integer()?)),
            Some(b'L') => {
                self.pos += 1;
                Ok(LtPoly::monomial(1, self.exponent()?, zero()))
            }
            Some(b't') => {
                self.pos += 1;
                Ok(LtPoly::monomial(1, zero(), self.exponent()?))
            }
            Some(b'\\') if self.starts_with("\\Lt") => {
                self.pos += 3;
                let l = self.braced_rational()?;
                let t = self.braced_rational()?;
                Ok(LtPoly::monomial(1, l, t))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.eat(b')')?;
                let power = self.exponent()?;
                match power.to_i64() {
                    Some(k) if power.is_integer() && k >= 0 => {
                        Ok((0..k).fold(LtPoly::constant(1), |acc, _| acc.mul(&inner)))
                    }
                    _ => self.err("non-integer power of a sum"),
                }
            }
            _ => self.err("expected a factor"),
        }
    }

    fn term(&mut self) -> Result<LtPoly> {
        let mut acc = self.factor()?;
        while self.starts_factor() {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<LtPoly> {
        let mut sign = 1;
        match self.peek() {
            Some(b'-') => {
                sign = -1;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let mut acc = LtPoly::default();
        loop {
            acc = acc.add(&self.term()?, sign);
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }
}

pub fn parse_poly(s: &str) -> Result<LtPoly> {
    let mut p = Parser {
        s: s.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// A single rational as written in a table cell: `2` or `\frac{5}{3}`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let mut p = Parser {
        s: s.as_bytes(),
        pos: 0,
    };
    let value = if p.starts_with("\\frac") {
        p.pos += 5;
        let a = p.braced_integer()?;
        let b = p.braced_integer()?;
        Rational::new(a, b)
    } else {
        Rational::from_integer(p.integer()?)
    };
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(value)
}

impl Parser<'_> {
    fn braced_integer(&mut self) -> Result<i64> {
        self.eat(b'{')?;
        let v = self.integer()?;
        self.eat(b'}')?;
        Ok(v)
    }
}

fn exponent_latex(e: &Rational) -> String {
    if e.is_integer() && (0..10).contains(&e.to_i64().unwrap_or(-1)) {
        format!("^{e}")
    } else {
        format!("^{{{}}}", e.to_latex())
    }
}

/// `1+t+2t^2+t^{\frac{10}{3}}+...` in increasing degree.
pub fn qgraded_to_latex(p: &QGradedPoly) -> String {
    if p.is_empty() {
        return "0".to_string();
    }
    let terms: Vec<String> = p
        .iter()
        .map(|(d, m)| {
            let mono = if d.is_zero() {
                String::new()
            } else if *d == Rational::one() {
                "t".to_string()
            } else {
                format!("t{}", exponent_latex(d))
            };
            match (m, mono.is_empty()) {
                (_, true) => m.to_string(),
                (1, false) => mono,
                _ => format!("{m}{mono}"),
            }
        })
        .collect();
    terms.join("+")
}

fn slash_exponent(var: char, e: &Rational) -> String {
    if e.is_zero() {
        String::new()
    } else if *e == Rational::one() {
        var.to_string()
    } else if e.is_integer() && e.to_i64().is_some_and(|v| v < 10) {
        format!("{var}^{e}")
    } else {
        format!("{var}^{{{e}}}")
    }
}

/// `1+L^{1/2}t+2Lt^2+...`, ordered by `t` then `L`.
pub fn bigraded_to_latex(p: &BiGradedPoly) -> String {
    if p.is_empty() {
        return "0".to_string();
    }
    let terms: Vec<String> = p
        .iter()
        .map(|(k, m)| {
            let mono = format!("{}{}", slash_exponent('L', &k.l), slash_exponent('t', &k.t));
            match (m, mono.is_empty()) {
                (_, true) => m.to_string(),
                (1, false) => mono,
                _ => format!("{m}{mono}"),
            }
        })
        .collect();
    terms.join("+")
}

/// Table order: by `N`, then inverse pairs by their lexicographically
/// larger member, descending, each followed by its inverse.
pub fn table_order(data: &[AdmissibleDatum]) -> Vec<AdmissibleDatum> {
    let mut reps: Vec<AdmissibleDatum> = data
        .iter()
        .map(|a| {
            let inv = a.involution();
            if inv.d > a.d {
                inv
            } else {
                a.clone()
            }
        })
        .collect();
    reps.sort_by(|a, b| a.n.cmp(&b.n).then(b.d.cmp(&a.d)));
    reps.dedup();
    let mut out = Vec::with_capacity(data.len());
    for r in reps {
        let inv = r.involution();
        let self_inverse = r.is_self_inverse();
        if data.contains(&r) {
            out.push(r);
        }
        if !self_inverse && data.contains(&inv) {
            out.push(inv);
        }
    }
    out
}

fn ordered<'a>(
    records: &'a [SectorRecord],
    keep: impl Fn(&SectorRecord) -> bool,
) -> Vec<&'a SectorRecord> {
    let data: Vec<AdmissibleDatum> = records
        .iter()
        .filter(|r| keep(r))
        .map(|r| r.datum.clone())
        .collect();
    table_order(&data)
        .iter()
        .map(|d| {
            records
                .iter()
                .find(|r| &r.datum == d)
                .expect("record present")
        })
        .collect()
}

/// Rows for the positive-dimensional `g' = 0` sectors: datum, open
/// character, compactified character, age.
pub fn table1_rows(records: &[SectorRecord]) -> Result<Vec<String>> {
    ordered(records, |r| r.datum.g_prime == 0 && r.dim > 0)
        .into_iter()
        .map(|r| {
            let missing = || Error::MissingRecord(format!("characters of {}", r.datum));
            Ok(format!(
                "${}$&${}$&${}$&${}$\\\\[1pt]",
                r.datum.table_label(),
                r.chi_open.as_ref().ok_or_else(missing)?.render("L"),
                r.chi_closed.as_ref().ok_or_else(missing)?.render("L"),
                r.age.to_latex()
            ))
        })
        .collect()
}

/// Rows for the zero-dimensional `g' = 0` sectors, two per line: the first
/// half of the list on the left, the rest on the right.
pub fn table2_rows(records: &[SectorRecord]) -> Vec<String> {
    let points = ordered(records, |r| r.datum.g_prime == 0 && r.dim == 0);
    let half = points.len().div_ceil(2);
    let cell = |r: &SectorRecord| format!("${}$&${}$", r.datum.table_label(), r.age.to_latex());
    (0..half)
        .map(|i| {
            let right = points
                .get(half + i)
                .map(|r| cell(r))
                .unwrap_or_else(|| "&".into());
            format!("{}&{}\\\\[1pt]", cell(points[i]), right)
        })
        .collect()
}

pub fn table1_latex(records: &[SectorRecord]) -> Result<String> {
    Ok(table1_rows(records)?.join("\n") + "\n")
}

pub fn table2_latex(records: &[SectorRecord]) -> String {
    table2_rows(records).join("\n") + "\n"
}

/// Removes whitespace and a trailing `\\[..]` spacing hint.
pub fn normalize_row(row: &str) -> String {
    let compact: String = row.chars().filter(|c| !c.is_whitespace()).collect();
    match compact.rfind("\\\\[") {
        Some(i) if compact.ends_with(']') => compact[..i].to_string(),
        _ => compact,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn parses_table_characters() {
        let p = parse_poly("L^5+3L^4+6L^3+6L^2+3L+1")
            .unwrap()
            .to_lpoly()
            .unwrap();
        assert_eq!(p, LPoly::from_coeffs(vec![1, 3, 6, 6, 3, 1]));
        let p = parse_poly("L^2-L").unwrap().to_lpoly().unwrap();
        assert_eq!(p, LPoly::from_coeffs(vec![0, -1, 1]));
        assert_eq!(
            parse_poly("-1+L").unwrap().to_lpoly().unwrap(),
            LPoly::from_coeffs(vec![-1, 1])
        );
    }

    #[test]
    fn parses_exponent_forms() {
        let p = parse_poly("t^2 + t^{12} + t^{7/2} + 2 t^{\\frac{10}{3}}").unwrap();
        let q = p.to_qgraded().unwrap();
        assert_eq!(q.get(&r(2, 1)), 1);
        assert_eq!(q.get(&r(12, 1)), 1);
        assert_eq!(q.get(&r(7, 2)), 1);
        assert_eq!(q.get(&r(10, 3)), 2);
    }

    #[test]
    fn parses_products_and_shorthand() {
        let p = parse_poly("\\Lt{7/3}{14/3}(2+Lt) + (3L^2+L^{5/2})t^4")
            .unwrap()
            .to_bigraded()
            .unwrap();
        assert_eq!(p.get(&r(7, 3), &r(14, 3)), 2);
        assert_eq!(p.get(&r(10, 3), &r(17, 3)), 1);
        assert_eq!(p.get(&r(2, 1), &r(4, 1)), 3);
        assert_eq!(p.get(&r(5, 2), &r(4, 1)), 1);
        assert_eq!(p.total(), 7);
    }

    #[test]
    fn ignores_alignment_marks() {
        let p = parse_poly("1&+t\\\\ &+ t^2.")
            .unwrap()
            .to_qgraded()
            .unwrap();
        assert_eq!(p, QGradedPoly::from_betti(&[1, 1, 1]));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("1+").is_err());
        assert!(parse_poly("x").is_err());
        assert!(parse_poly("(1+t)^{1/2}").is_err());
        assert!(parse_poly("L t").unwrap().to_qgraded().is_err());
        assert!(parse_poly("1-t").unwrap().to_bigraded().is_err());
    }

    #[test]
    fn rational_cells() {
        assert_eq!(parse_rational("\\frac{20}{7}").unwrap(), r(20, 7));
        assert_eq!(parse_rational(" 3 ").unwrap(), r(3, 1));
        assert!(parse_rational("3x").is_err());
    }

    #[test]
    fn latex_rendering() {
        let q = QGradedPoly::from_terms([
            (r(0, 1), 1),
            (r(1, 1), 1),
            (r(2, 1), 2),
            (r(10, 3), 1),
            (r(12, 1), 1),
        ]);
        assert_eq!(qgraded_to_latex(&q), "1+t+2t^2+t^{\\frac{10}{3}}+t^{12}");
        let mut b = BiGradedPoly::new();
        b.add_term(r(0, 1), r(0, 1), 1);
        b.add_term(r(1, 2), r(1, 1), 1);
        b.add_term(r(1, 1), r(2, 1), 2);
        b.add_term(r(33, 14), r(33, 7), 1);
        let s = bigraded_to_latex(&b);
        assert_eq!(s, "1+L^{1/2}t+2Lt^2+L^{33/14}t^{33/7}");
        assert_eq!(parse_poly(&s).unwrap().to_bigraded().unwrap(), b);
    }

    #[test]
    fn row_normalization() {
        assert_eq!(
            normalize_row("$(4;0,0,4)$ & $L$&$L+1$&$3$\\\\[1pt] "),
            "$(4;0,0,4)$&$L$&$L+1$&$3$"
        );
        assert_eq!(normalize_row("a & b"), "a&b");
    }

    #[test]
    fn ordering_pairs_inverses() {
        let d = |v: &[u32]| AdmissibleDatum::new(3, 0, 4, v.to_vec()).unwrap();
        let data = vec![
            d(&[0, 3, 2]),
            d(&[2, 0, 2]),
            d(&[0, 0, 4]),
            d(&[4, 0, 0]),
            d(&[2, 3, 0]),
        ];
        let labels: Vec<String> = table_order(&data).iter().map(|a| a.table_label()).collect();
        assert_eq!(
            labels,
            [
                "(4;4,0,0)",
                "(4;0,0,4)",
                "(4;2,3,0)",
                "(4;0,3,2)",
                "(4;2,0,2)"
            ]
        );
    }
}
