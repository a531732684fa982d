//! Admissible data `(g', N; d_1, ..., d_{N-1})` and the twisted sectors they
//! index.
//!
//! A datum describes a cyclic cover of order `N` of a genus-`g'` curve, with
//! `d_i` branch points of local monodromy `i`, whose total space has genus
//! `g`. It is admissible when the Riemann–Hurwitz equation and the
//! structural equation `Σ i d_i ≡ 0 (mod N)` both hold.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{factorial, partitions, CycleType};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AdmissibleDatum {
    /// Genus of the covering curve.
    pub g: u32,
    /// Genus of the quotient curve.
    pub g_prime: u32,
    /// Order of the automorphism.
    #[serde(rename = "N")]
    pub n: u32,
    /// `d[i-1]` is the number of branch points with local monodromy `i`.
    pub d: Vec<u32>,
}

/// `gcd(i, N) (N / gcd(i, N) - 1)`, the contribution of one branch point of
/// monodromy `i` to the Riemann–Hurwitz count.
pub fn ramification_weight(i: u32, n: u32) -> u32 {
    n - i.gcd(&n)
}

impl AdmissibleDatum {
    /// Validating constructor.
    pub fn new(g: u32, g_prime: u32, n: u32, d: Vec<u32>) -> Result<Self> {
        if g < 2 {
            return Err(Error::InvalidGenus(g));
        }
        let datum = Self::new_unchecked(g, g_prime, n, d);
        if n < 2 || datum.d.len() != (n - 1) as usize {
            return Err(Error::InvalidDatum(format!(
                "{datum}: need N >= 2 and N-1 branch multiplicities"
            )));
        }
        if datum.g_prime > datum.g {
            return Err(Error::InvalidDatum(format!("{datum}: g' exceeds g")));
        }
        if !datum.satisfies_riemann_hurwitz() {
            return Err(Error::InvalidDatum(format!(
                "{datum}: Riemann-Hurwitz fails"
            )));
        }
        if !datum.satisfies_structural_equation() {
            return Err(Error::InvalidDatum(format!(
                "{datum}: sum i*d_i is not divisible by N"
            )));
        }
        Ok(datum)
    }

    pub fn new_unchecked(g: u32, g_prime: u32, n: u32, d: Vec<u32>) -> Self {
        AdmissibleDatum { g, g_prime, n, d }
    }

    pub fn satisfies_riemann_hurwitz(&self) -> bool {
        let lhs = 2 * self.g as i64 - 2;
        let ram: i64 = self
            .branch()
            .map(|(i, di)| di as i64 * ramification_weight(i, self.n) as i64)
            .sum();
        lhs == self.n as i64 * (2 * self.g_prime as i64 - 2) + ram
    }

    pub fn satisfies_structural_equation(&self) -> bool {
        let s: u64 = self.branch().map(|(i, di)| i as u64 * di as u64).sum();
        s % self.n as u64 == 0
    }

    /// `(i, d_i)` for `i = 1..N-1`.
    pub fn branch(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.d.iter().enumerate().map(|(j, &di)| (j as u32 + 1, di))
    }

    /// `d = Σ d_i`
    pub fn total_branch(&self) -> u32 {
        self.d.iter().sum()
    }

    pub fn connectedness_k(&self) -> u32 {
        self.branch()
            .filter(|&(_, di)| di != 0)
            .fold(self.n, |k, (i, _)| k.gcd(&i))
    }

    pub fn is_twisted_sector(&self) -> bool {
        self.g_prime >= 1 || self.connectedness_k() == 1
    }

    /// `3g' - 3 + d`
    pub fn sector_dimension(&self) -> i64 {
        3 * self.g_prime as i64 - 3 + self.total_branch() as i64
    }

    /// Inverse sector: local monodromy `i` becomes `N - i`.
    pub fn involution(&self) -> AdmissibleDatum {
        let mut d = self.d.clone();
        d.reverse();
        AdmissibleDatum { d, ..self.clone() }
    }

    pub fn is_self_inverse(&self) -> bool {
        self.d.iter().eq(self.d.iter().rev())
    }

    /// Order of the Young subgroup `S_{d_1} × ... × S_{d_{N-1}}`.
    pub fn young_order(&self) -> BigInt {
        self.d.iter().map(|&di| factorial(di as usize)).product()
    }

    /// Conjugacy classes of the Young subgroup, as cycle types on the `d`
    /// branch points together with their sizes.
    pub fn young_classes(&self) -> Vec<YoungClass> {
        let mut out = vec![YoungClass {
            blocks: Vec::new(),
            class_size: BigInt::from(1),
        }];
        for &di in &self.d {
            if di == 0 {
                continue;
            }
            let block_types = partitions(di as usize);
            out = out
                .into_iter()
                .flat_map(|prev| {
                    block_types.iter().map(move |lam| {
                        let mut blocks = prev.blocks.clone();
                        blocks.push(lam.clone());
                        YoungClass {
                            blocks,
                            class_size: &prev.class_size * lam.class_size(),
                        }
                    })
                })
                .collect();
        }
        out
    }

    /// Table notation without `g'`: `(4;2,3,0)`, or the comma-free
    /// `(12;10100001000)` once `N >= 10`.
    pub fn table_label(&self) -> String {
        let sep = if self.n >= 10 { "" } else { "," };
        let body: Vec<String> = self.d.iter().map(u32::to_string).collect();
        format!("({};{})", self.n, body.join(sep))
    }
}

impl fmt::Display for AdmissibleDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.d.iter().map(u32::to_string).collect();
        write!(f, "({},{};{})", self.g_prime, self.n, body.join(","))
    }
}

impl fmt::Debug for AdmissibleDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={} {}", self.g, self)
    }
}

/// Parses `"(g',N;d1,...)"` (parentheses optional) for a given target
/// genus, validating admissibility.
pub fn parse_datum(g: u32, s: &str) -> Result<AdmissibleDatum> {
    let bad = || Error::Parse(format!("expected (g',N;d1,...,d_(N-1)), got {s:?}"));
    let s_trim = s.trim();
    let body = match (s_trim.strip_prefix('('), s_trim.ends_with(')')) {
        (Some(inner), true) => &inner[..inner.len() - 1],
        (None, false) => s_trim,
        _ => return Err(bad()),
    };
    let (head, tail) = body.split_once(';').ok_or_else(bad)?;
    let (gp, n) = head.split_once(',').ok_or_else(bad)?;
    let gp: u32 = gp.trim().parse().map_err(|_| bad())?;
    let n: u32 = n.trim().parse().map_err(|_| bad())?;
    let d: Vec<u32> = if tail.contains(',') || tail.trim().len() <= 1 {
        tail.split(',')
            .map(|x| x.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?
    } else {
        tail.trim()
            .chars()
            .map(|c| c.to_digit(10).ok_or_else(bad))
            .collect::<Result<_>>()?
    };
    AdmissibleDatum::new(g, gp, n, d)
}

impl FromStr for AdmissibleDatum {
    type Err = Error;

    /// `"g:(g',N;d...)"`
    fn from_str(s: &str) -> Result<Self> {
        let (g, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected g:(g',N;d...), got {s:?}")))?;
        let g: u32 = g
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad genus in {s:?}")))?;
        parse_datum(g, rest)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct YoungClass {
    /// One partition of `d_i` per nonempty block.
    pub blocks: Vec<CycleType>,
    pub class_size: BigInt,
}

impl YoungClass {
    /// Cycle type as a permutation of all `d` branch points.
    pub fn cycle_type(&self) -> CycleType {
        CycleType::concat(&self.blocks)
    }
}

/// A connected component of `M_A` singled out by the exact order of the
/// torsion line bundle attached to the cover. Only the component of order
/// exactly `k` parametrizes connected covers.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Component {
    pub order: u32,
    pub connected: bool,
}

impl Component {
    pub fn label(&self, k: u32) -> String {
        if self.order == k {
            "order_k".to_string()
        } else {
            format!("order_{}:disconnected", self.order)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SectorShape {
    pub datum: AdmissibleDatum,
    pub total_branch: u32,
    pub dimension: i64,
    pub k: u32,
    /// Sizes of the blocks `J_1, ..., J_{N-1}` of `{1..d}`.
    pub blocks: Vec<u32>,
    pub components: Vec<Component>,
    /// Whether the genus-0 counting pipeline computes this sector.
    pub genus0_pipeline: bool,
}

impl SectorShape {
    pub fn of(datum: &AdmissibleDatum) -> SectorShape {
        let k = datum.connectedness_k();
        let components = if datum.g_prime == 0 {
            vec![Component {
                order: k,
                connected: k == 1,
            }]
        } else {
            let mut divisors: Vec<u32> = (1..=k).filter(|m| k % m == 0).collect();
            divisors.reverse();
            divisors
                .into_iter()
                .map(|order| Component {
                    order,
                    connected: order == k,
                })
                .collect()
        };
        SectorShape {
            datum: datum.clone(),
            total_branch: datum.total_branch(),
            dimension: datum.sector_dimension(),
            k,
            blocks: datum.d.clone(),
            components,
            genus0_pipeline: datum.g_prime == 0 && k == 1,
        }
    }

    pub fn is_connected_sector(&self) -> bool {
        self.components.iter().any(|c| c.connected)
    }

    pub fn record(&self) -> DatumRecord {
        DatumRecord {
            g: self.datum.g,
            g_prime: self.datum.g_prime,
            n: self.datum.n,
            d: self.datum.d.clone(),
            k: self.k,
            dim: self.dimension,
            connected: self.is_connected_sector(),
            components: self.components.iter().map(|c| c.label(self.k)).collect(),
        }
    }
}

/// One line of the `enumerate` output.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DatumRecord {
    pub g: u32,
    pub g_prime: u32,
    #[serde(rename = "N")]
    pub n: u32,
    pub d: Vec<u32>,
    pub k: u32,
    pub dim: i64,
    pub connected: bool,
    pub components: Vec<String>,
}

/// Classical bound on the order of an automorphism of a genus-`g` curve.
pub fn max_order(g: u32) -> u32 {
    4 * g + 2
}

/// All branch vectors for fixed `(g', N)`, by bounded knapsack over the
/// ramification weights.
fn branch_vectors(n: u32, target: u32) -> Vec<Vec<u32>> {
    fn go(i: u32, n: u32, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == n {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = ramification_weight(i, n);
        for di in 0..=rem / w {
            cur.push(di);
            go(i + 1, n, rem - di * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, target, &mut Vec::new(), &mut out);
    out
}

/// Every `g`-admissible datum with order `N` up to `max_n`.
pub fn enumerate_up_to(g: u32, max_n: u32) -> Result<Vec<AdmissibleDatum>> {
    if g < 2 {
        return Err(Error::InvalidGenus(g));
    }
    let pairs: Vec<(u32, u32)> = (0..=g)
        .flat_map(|gp| (2..=max_n).map(move |n| (gp, n)))
        .collect();
    let mut out: Vec<AdmissibleDatum> = pairs
        .par_iter()
        .flat_map_iter(|&(gp, n)| {
            let target = 2 * g as i64 - 2 - n as i64 * (2 * gp as i64 - 2);
            let vectors = if target < 0 {
                Vec::new()
            } else {
                branch_vectors(n, target as u32)
            };
            vectors
                .into_iter()
                .map(move |d| AdmissibleDatum::new_unchecked(g, gp, n, d))
                .filter(AdmissibleDatum::satisfies_structural_equation)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// `enumerate_admissible`: all `g`-admissible data, sorted by `(g', N, d)`.
pub fn enumerate_admissible(g: u32) -> Result<Vec<AdmissibleDatum>> {
    enumerate_up_to(g, max_order(g))
}

/// Shapes of all data that index a nonempty twisted sector of `M_g`.
pub fn connected_sectors(g: u32) -> Result<Vec<SectorShape>> {
    Ok(enumerate_admissible(g)?
        .iter()
        .map(SectorShape::of)
        .filter(SectorShape::is_connected_sector)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(gp: u32, n: u32, d: &[u32]) -> AdmissibleDatum {
        AdmissibleDatum::new(3, gp, n, d.to_vec()).unwrap()
    }

    #[test]
    fn k_examples() {
        assert_eq!(datum(0, 2, &[8]).connectedness_k(), 1);
        assert_eq!(datum(2, 2, &[0]).connectedness_k(), 2);
        assert_eq!(datum(1, 4, &[0, 2, 0]).connectedness_k(), 2);
    }

    #[test]
    fn twisted_sector_examples() {
        assert!(datum(0, 2, &[8]).is_twisted_sector());
        assert!(datum(2, 2, &[0]).is_twisted_sector());
        // g' = 0 with k = 2 parametrizes only disconnected covers.
        let split = datum(0, 4, &[0, 6, 0]);
        assert_eq!(split.connectedness_k(), 2);
        assert!(!split.is_twisted_sector());
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(datum(0, 2, &[8]).sector_dimension(), 5);
        assert_eq!(datum(1, 2, &[4]).sector_dimension(), 4);
        assert_eq!(datum(2, 2, &[0]).sector_dimension(), 3);
    }

    #[test]
    fn involution_examples() {
        assert_eq!(datum(0, 3, &[4, 1]).involution(), datum(0, 3, &[1, 4]));
        assert_eq!(datum(0, 2, &[8]).involution(), datum(0, 2, &[8]));
        let p = datum(0, 6, &[1, 0, 2, 0, 1]);
        assert_eq!(p.involution(), p);
    }

    #[test]
    fn young_class_examples() {
        let s8 = datum(0, 2, &[8]).young_classes();
        assert_eq!(s8.len(), 22);
        assert_eq!(
            s8.iter().map(|c| &c.class_size).sum::<BigInt>(),
            BigInt::from(40320)
        );

        let s2s3 = datum(0, 4, &[2, 3, 0]).young_classes();
        assert_eq!(s2s3.len(), 6);
        assert_eq!(
            s2s3.iter().map(|c| &c.class_size).sum::<BigInt>(),
            BigInt::from(12)
        );
    }

    #[test]
    fn constructor_rejects() {
        assert!(matches!(
            AdmissibleDatum::new(1, 0, 2, vec![4]),
            Err(Error::InvalidGenus(1))
        ));
        assert!(AdmissibleDatum::new(3, 0, 2, vec![7]).is_err());
        assert!(AdmissibleDatum::new(3, 0, 3, vec![4]).is_err());
        // Riemann-Hurwitz holds, structural equation fails.
        assert!(AdmissibleDatum::new(3, 1, 3, vec![2, 0]).is_err());
    }

    #[test]
    fn enumerate_rejects_small_genus() {
        assert!(matches!(
            enumerate_admissible(1),
            Err(Error::InvalidGenus(1))
        ));
    }

    #[test]
    fn genus3_census() {
        let shapes = connected_sectors(3).unwrap();
        let g0 = shapes.iter().filter(|s| s.datum.g_prime == 0).count();
        assert_eq!(g0, 43);
        let higher: Vec<String> = shapes
            .iter()
            .filter(|s| s.datum.g_prime > 0)
            .map(|s| s.datum.to_string())
            .collect();
        assert_eq!(higher, ["(1,2;4)", "(1,3;1,1)", "(1,4;0,2,0)", "(2,2;0)"]);
    }

    #[test]
    fn component_descriptor() {
        let c = SectorShape::of(&datum(1, 4, &[0, 2, 0]));
        assert_eq!(c.record().components, ["order_k", "order_1:disconnected"]);
        assert!(!c.genus0_pipeline);
        let json = serde_json::to_string(&SectorShape::of(&datum(0, 2, &[8])).record()).unwrap();
        assert_eq!(
            json,
            r#"{"g":3,"g_prime":0,"N":2,"d":[8],"k":1,"dim":5,"connected":true,"components":["order_k"]}"#
        );
    }

    #[test]
    fn labels_and_parsing() {
        let d = datum(0, 12, &[1, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0]);
        assert_eq!(d.table_label(), "(12;10100001000)");
        assert_eq!(parse_datum(3, "(12;10100001000)").ok(), None);
        assert_eq!(parse_datum(3, "(0,12;10100001000)").unwrap(), d);
        assert_eq!(parse_datum(3, "0,2;8").unwrap(), datum(0, 2, &[8]));
        assert!(parse_datum(3, "(0,2;8").is_err());
        assert_eq!(
            "3:(2,2;0)".parse::<AdmissibleDatum>().unwrap(),
            datum(2, 2, &[0])
        );
    }

    #[test]
    fn order_bound_is_not_binding() {
        // larger orders only occur for disconnected covers
        for g in 2..=5 {
            let connected = |v: Vec<AdmissibleDatum>| -> Vec<AdmissibleDatum> {
                v.into_iter()
                    .filter(|a| SectorShape::of(a).is_connected_sector())
                    .collect()
            };
            let wide = connected(enumerate_up_to(g, 3 * max_order(g)).unwrap());
            assert_eq!(wide, connected(enumerate_admissible(g).unwrap()), "g = {g}");
        }
    }
}
