use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer polynomial in one indeterminate.
///
/// The indeterminate is read as the field size `q` while counting points and
/// as the Tate class `L` when the polynomial is a Hodge–Grothendieck
/// character; for polynomial-count spaces the two readings coincide.
/// Coefficients are indexed by exponent and kept without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LPoly {
    coeffs: Vec<BigInt>,
}

impl LPoly {
    pub fn zero() -> Self {
        LPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(c: i64, exp: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = c.into();
        Self::from_big(coeffs)
    }

    /// Builds from coefficients in ascending order of exponent.
    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        Self::from_big(coeffs.into_iter().map(BigInt::from).collect())
    }

    pub fn from_big(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: usize) -> BigInt {
        self.coeffs.get(exp).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// Substitutes `q -> q^m`.
    pub fn compose_power(&self, m: usize) -> LPoly {
        assert!(m >= 1);
        if self.is_zero() {
            return LPoly::zero();
        }
        let mut out = vec![BigInt::zero(); (self.coeffs.len() - 1) * m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * m] = c.clone();
        }
        LPoly::from_big(out)
    }

    pub fn scale(&self, k: &BigInt) -> LPoly {
        LPoly::from_big(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divides every coefficient by `k`; `None` unless all divisions are exact.
    pub fn div_scalar_exact(&self, k: &BigInt) -> Option<LPoly> {
        if k.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (quo, rem) = c.div_rem(k);
            if !rem.is_zero() {
                return None;
            }
            out.push(quo);
        }
        Some(LPoly::from_big(out))
    }

    /// Long division that insists on a zero remainder.
    pub fn exact_divide(&self, divisor: &LPoly) -> Result<LPoly> {
        let dlead = divisor.leading_coeff().ok_or(Error::DivisionByZero)?;
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return if self.is_zero() {
                Ok(LPoly::zero())
            } else {
                Err(Error::NonExactDivision)
            };
        }
        let mut quo = vec![BigInt::zero(); rem.len() - ddeg];
        for shift in (0..quo.len()).rev() {
            let top = &rem[shift + ddeg];
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(dlead);
            if !r.is_zero() {
                return Err(Error::NonExactDivision);
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &qc * dc;
            }
            quo[shift] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NonExactDivision);
        }
        Ok(LPoly::from_big(quo))
    }

    /// `c_j = c_{top - j}` for all `j`, with nothing above `top`.
    pub fn is_palindromic(&self, top: usize) -> bool {
        if self.coeffs.len() > top + 1 {
            return false;
        }
        (0..=top).all(|j| self.coeff(j) == self.coeff(top - j))
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Renders with the given variable name, highest power first
    /// (`L^5+3L^4-L+1`).
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (exp, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let mono = match exp {
                0 => String::new(),
                1 => var.to_string(),
                e if e < 10 => format!("{var}^{e}"),
                e => format!("{var}^{{{e}}}"),
            };
            if mono.is_empty() || !abs.is_one() {
                out.push_str(&abs.to_string());
            }
            out.push_str(&mono);
        }
        out
    }
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("L"))
    }
}

impl fmt::Debug for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LPoly({self})")
    }
}

impl Add<&LPoly> for &LPoly {
    type Output = LPoly;
    fn add(self, rhs: &LPoly) -> LPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        LPoly::from_big((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&LPoly> for &LPoly {
    type Output = LPoly;
    fn sub(self, rhs: &LPoly) -> LPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        LPoly::from_big((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&LPoly> for &LPoly {
    type Output = LPoly;
    fn mul(self, rhs: &LPoly) -> LPoly {
        if self.is_zero() || rhs.is_zero() {
            return LPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LPoly::from_big(out)
    }
}

impl Neg for &LPoly {
    type Output = LPoly;
    fn neg(self) -> LPoly {
        LPoly::from_big(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for LPoly {
            type Output = LPoly;
            fn $method(self, rhs: LPoly) -> LPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl std::iter::Sum for LPoly {
    fn sum<I: Iterator<Item = LPoly>>(iter: I) -> LPoly {
        iter.fold(LPoly::zero(), |acc, p| &acc + &p)
    }
}

impl std::iter::Product for LPoly {
    fn product<I: Iterator<Item = LPoly>>(iter: I) -> LPoly {
        iter.fold(LPoly::one(), |acc, p| &acc * &p)
    }
}

impl Serialize for LPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for LPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        let coeffs = raw
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LPoly::from_big(coeffs))
    }
}
