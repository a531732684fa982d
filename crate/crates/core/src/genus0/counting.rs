//! Twisted point counts on `M_{0,n}`.
//!
//! For a permutation `σ` of the marked points, the `σF`-fixed configurations
//! are those with `F(x_i) = x_{σ(i)}`. Along an `ℓ`-cycle of `σ` the first
//! point determines the rest and must have exact degree `ℓ` over `F_q`, so
//! each cycle consumes one Frobenius orbit of size exactly `ℓ`. Dividing by
//! `|PGL_2(F_q)| = q^3 - q` gives the count on the moduli space, which by
//! purity is the trace of `σ` on its compactly supported Euler
//! characteristic.

use num_bigint::BigInt;

use crate::algebra::LPoly;
use crate::error::{Error, Result};
use crate::partition::CycleType;

pub fn mobius(n: usize) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of points of `P^1` over `\bar F_q` whose Frobenius orbit has size
/// exactly `ell`: `Σ_{m | ell} μ(ell/m) (q^m + 1)`.
pub fn exact_degree_count(ell: usize) -> LPoly {
    assert!(ell >= 1);
    (1..=ell)
        .filter(|m| ell % m == 0)
        .map(|m| {
            let mu = mobius(ell / m);
            let pts = &LPoly::monomial(1, m) + &LPoly::one();
            pts.scale(&BigInt::from(mu))
        })
        .sum()
}

/// `q^3 - q`
pub fn pgl2_order() -> LPoly {
    LPoly::from_coeffs(vec![0, -1, 0, 1])
}

/// Trace of a permutation of cycle type `t` on the compactly supported
/// Euler characteristic of `M_{0,n}`, as a polynomial in `q = L`.
pub fn trace_open(t: &CycleType) -> Result<LPoly> {
    let n = t.size();
    if n < 3 {
        return Err(Error::Unsupported(format!(
            "M_(0,{n}) is empty; need n >= 3"
        )));
    }
    let mut configs = LPoly::one();
    for (len, count) in t.multiplicities() {
        let r = exact_degree_count(len);
        for used in 0..count {
            let remaining = &r - &LPoly::constant((used * len) as i64);
            configs = &configs * &remaining;
        }
    }
    configs.exact_divide(&pgl2_order())
}
