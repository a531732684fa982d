//! Integer partitions as cycle types of permutations.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

/// A partition of `n`, parts sorted in non-increasing order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    /// `[1^n]`
    pub fn identity(n: usize) -> Self {
        CycleType(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts equal to `len`.
    pub fn multiplicity(&self, len: usize) -> usize {
        self.0.iter().filter(|&&p| p == len).count()
    }

    /// `(length, multiplicity)` pairs, longest first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((len, m)) if *len == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Centralizer order `z_λ = Π m^{a_m} a_m!`.
    pub fn z(&self) -> BigInt {
        self.multiplicities()
            .into_iter()
            .map(|(len, a)| BigInt::from(len).pow(a as u32) * factorial(a))
            .product()
    }

    /// Size of the conjugacy class in `S_n`.
    pub fn class_size(&self) -> BigInt {
        factorial(self.size()) / self.z()
    }

    /// A permutation of `0..n` of this cycle type, cycles laid out on
    /// consecutive points.
    pub fn representative(&self) -> Vec<usize> {
        let mut perm = Vec::with_capacity(self.size());
        let mut start = 0;
        for &len in &self.0 {
            for j in 0..len {
                perm.push(start + (j + 1) % len);
            }
            start += len;
        }
        perm
    }

    pub fn concat(types: &[CycleType]) -> CycleType {
        CycleType::new(types.iter().flat_map(|t| t.0.iter().copied()).collect())
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// All partitions of `n` in reverse lexicographic order (`[n]` first).
pub fn partitions(n: usize) -> Vec<CycleType> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<CycleType>) {
        if rem == 0 {
            out.push(CycleType(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Cycle type of a permutation given as an image vector.
pub fn cycle_type_of(perm: &[usize]) -> CycleType {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        parts.push(len);
    }
    CycleType::new(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 0..=8 {
            let total: BigInt = partitions(n).iter().map(CycleType::class_size).sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn representative_has_its_type() {
        for n in 1..=7 {
            for t in partitions(n) {
                assert_eq!(cycle_type_of(&t.representative()), t);
            }
        }
    }

    #[test]
    fn z_values() {
        assert_eq!(CycleType::new(vec![2, 2]).z(), BigInt::from(8));
        assert_eq!(CycleType::new(vec![1, 1, 2]).z(), BigInt::from(4));
        assert_eq!(CycleType::new(vec![3, 1]).class_size(), BigInt::from(8));
    }
}
