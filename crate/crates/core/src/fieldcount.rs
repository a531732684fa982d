//! Brute-force twisted point counts over explicit finite fields.
//!
//! Independent of the closed formula in [`crate::genus0::counting`]: builds
//! `F_{q^L}` as `F_p[x]/(f)` with `f` found by trial division, tabulates the
//! `q`-power Frobenius on `P^1(F_{q^L})`, and counts configurations of
//! distinct points with `F(x_i) = x_{σ(i)}` directly.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::partition::CycleType;

/// `F_{p^m}` with elements encoded as base-`p` digit strings (low digit
/// first) packed into a `u32`.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    m: usize,
    /// Monic modulus, `m + 1` coefficients, low degree first.
    modulus: Vec<u32>,
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = mod_inverse(b[db], p);
    while r.len() > db {
        let lead = *r.last().expect("nonempty");
        if lead != 0 {
            let c = lead * inv % p;
            let shift = r.len() - 1 - db;
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - c * bi % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    (1..p).find(|x| a * x % p == 1).expect("invertible")
}

fn digits(mut x: u32, p: u32, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        // every monic polynomial of degree d
        for low in 0..p.pow(d as u32) {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn prime_power(q: u32) -> Option<(u32, usize)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

impl FiniteField {
    pub fn new(p: u32, m: usize) -> Result<Self> {
        if prime_power(p) != Some((p, 1)) || m == 0 {
            return Err(Error::Unsupported(format!("F_({p}^{m})")));
        }
        let modulus = (0..p.pow(m as u32))
            .map(|low| {
                let mut f = digits(low, p, m);
                f.push(1);
                f
            })
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree");
        Ok(FiniteField { p, m, modulus })
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.m as u32)
    }

    fn pack(&self, v: &[u32]) -> u32 {
        v.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (digits(a, self.p, self.m), digits(b, self.p, self.m));
        let mut prod = vec![0u32; 2 * self.m - 1];
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % self.p;
            }
        }
        let r = if prod.len() > self.m {
            poly_rem(&prod, &self.modulus, self.p)
        } else {
            prod
        };
        self.pack(&r)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = self.pack(&[1]);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Number of `σF`-fixed configurations of `n` distinct points of `P^1`
/// over `F_q`, for `σ` of the given cycle type, divided by `|PGL_2(F_q)|`.
pub fn brute_force_trace_open(t: &CycleType, q: u32) -> Result<BigInt> {
    let (p, k) = prime_power(q).ok_or_else(|| Error::Unsupported(format!("q = {q}")))?;
    let big_l = t.parts().iter().fold(1usize, |acc, &l| acc.lcm(&l));
    let field = FiniteField::new(p, k * big_l)?;
    let size = field.order();
    let infinity = size;
    // Frobenius x -> x^q on P^1(F_{q^L}); infinity is fixed.
    let mut frob: Vec<u32> = (0..size).map(|x| field.pow(x, q as u64)).collect();
    frob.push(infinity);

    let iterate = |x: u32, times: usize| (0..times).fold(x, |y, _| frob[y as usize]);
    let candidates: Vec<Vec<u32>> = t
        .parts()
        .iter()
        .map(|&len| (0..=infinity).filter(|&x| iterate(x, len) == x).collect())
        .collect();

    let mut count = 0u64;
    let mut points: Vec<u32> = Vec::with_capacity(t.size());
    fn go(
        cycle: usize,
        t: &CycleType,
        candidates: &[Vec<u32>],
        frob: &[u32],
        points: &mut Vec<u32>,
        count: &mut u64,
    ) {
        if cycle == candidates.len() {
            *count += 1;
            return;
        }
        let len = t.parts()[cycle];
        'start: for &x in &candidates[cycle] {
            let before = points.len();
            let mut y = x;
            for _ in 0..len {
                if points.contains(&y) {
                    points.truncate(before);
                    continue 'start;
                }
                points.push(y);
                y = frob[y as usize];
            }
            go(cycle + 1, t, candidates, frob, points, count);
            points.truncate(before);
        }
    }
    go(0, t, &candidates, &frob, &mut points, &mut count);

    let q = q as u64;
    let pgl = q * q * q - q;
    if count % pgl != 0 {
        return Err(Error::NonExactDivision);
    }
    Ok(BigInt::from(count / pgl))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for (p, m) in [(2, 2), (3, 2), (2, 3), (5, 1)] {
            let f = FiniteField::new(p, m).unwrap();
            let size = f.order();
            // every nonzero element has multiplicative order dividing size - 1
            for x in 1..size {
                assert_eq!(f.pow(x, (size - 1) as u64), f.pack(&[1]), "F_{p}^{m}");
            }
            // x^size = x
            for x in 0..size {
                assert_eq!(f.pow(x, size as u64), x);
            }
        }
    }

    #[test]
    fn composite_q_rejected() {
        assert!(brute_force_trace_open(&CycleType::identity(4), 6).is_err());
    }

    #[test]
    fn four_points() {
        // q - 2 and q
        for q in [3u32, 4, 5] {
            assert_eq!(
                brute_force_trace_open(&CycleType::identity(4), q).unwrap(),
                BigInt::from(q as i64 - 2)
            );
            assert_eq!(
                brute_force_trace_open(&CycleType::new(vec![2, 1, 1]), q).unwrap(),
                BigInt::from(q)
            );
        }
    }
}
