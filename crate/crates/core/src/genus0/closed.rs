//! Twisted point counts on `\bar M_{0,n}` and the cached trace tables.
//!
//! `\bar M_{0,n}` is the disjoint union of its strata `M_Γ ≅ Π_v M_{0,val(v)}`
//! over stable trees `Γ`. A permutation `σ` of the legs only has `σF`-fixed
//! points on strata with `σΓ = Γ`. On such a stratum, a vertex orbit of
//! length `m` contributes the twisted count of `M_{0,val(v)}` over `F_{q^m}`
//! for the permutation that `σ^m` induces on the flags of `v`.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::counting::trace_open;
use super::trees::{
    enumerate_stable_trees, permute_mask, permute_vertex, vertex_index, StableTree,
};
use crate::algebra::LPoly;
use crate::error::{Error, Result};
use crate::partition::{cycle_type_of, partitions, CycleType};

fn perm_power(perm: &[usize], m: usize) -> Vec<usize> {
    (0..perm.len())
        .map(|i| (0..m).fold(i, |x, _| perm[x]))
        .collect()
}

fn open_cached(cache: &mut HashMap<CycleType, LPoly>, t: &CycleType) -> Result<LPoly> {
    if let Some(p) = cache.get(t) {
        return Ok(p.clone());
    }
    let p = trace_open(t)?;
    cache.insert(t.clone(), p.clone());
    Ok(p)
}

/// Contribution of one `σ`-stable tree.
fn stratum_trace(
    tree: &StableTree,
    perm: &[usize],
    cache: &mut HashMap<CycleType, LPoly>,
) -> Result<LPoly> {
    let verts = tree.vertices();
    let index = vertex_index(&verts);
    let mut visited = vec![false; verts.len()];
    let mut product = LPoly::one();
    for start in 0..verts.len() {
        if visited[start] {
            continue;
        }
        let mut cur = start;
        let mut orbit_len = 0;
        loop {
            visited[cur] = true;
            let img = permute_vertex(&verts[cur], perm);
            cur = *index.get(&img).ok_or_else(|| {
                Error::OracleMismatch(format!("{tree} is not stable under {perm:?}"))
            })?;
            orbit_len += 1;
            if cur == start {
                break;
            }
        }
        let ret = perm_power(perm, orbit_len);
        let blocks = &verts[start].blocks;
        let flag_perm: Vec<usize> = blocks
            .iter()
            .map(|&b| {
                let img = permute_mask(b, &ret);
                blocks.iter().position(|&c| c == img).expect("flag image")
            })
            .collect();
        let local = open_cached(cache, &cycle_type_of(&flag_perm))?;
        product = &product * &local.compose_power(orbit_len);
    }
    Ok(product)
}

/// Trace of the leg permutation `perm` on the compactly supported Euler
/// characteristic of `\bar M_{0,n}`, summed over the given trees.
pub fn trace_closed_on(trees: &[StableTree], perm: &[usize]) -> Result<LPoly> {
    let mut cache = HashMap::new();
    let mut total = LPoly::zero();
    for tree in trees.iter().filter(|t| t.is_fixed_by(perm)) {
        total = &total + &stratum_trace(tree, perm, &mut cache)?;
    }
    Ok(total)
}

/// `trace_closed` for a single permutation of `0..n`.
pub fn trace_closed(perm: &[usize]) -> Result<LPoly> {
    let trees = enumerate_stable_trees(perm.len())?;
    trace_closed_on(&trees, perm)
}

/// `τ σ τ^{-1}` for the reflection-rotation `τ(i) = (n - i) mod n`.
fn conjugate_sample(perm: &[usize]) -> Vec<usize> {
    let n = perm.len();
    let tau = |i: usize| (n - i) % n;
    let mut out = vec![0; n];
    for i in 0..n {
        out[tau(i)] = tau(perm[i]);
    }
    out
}

#[derive(Serialize, Deserialize)]
struct TraceEntry {
    n: usize,
    cycle_type: CycleType,
    trace: LPoly,
}

#[derive(Serialize, Deserialize)]
struct TraceFile {
    open: Vec<TraceEntry>,
    closed: Vec<TraceEntry>,
}

/// Traces on `M_{0,n}` and `\bar M_{0,n}` keyed by `(n, cycle type)`.
/// Built once, then read-only.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TraceTable {
    open: BTreeMap<(usize, CycleType), LPoly>,
    closed: BTreeMap<(usize, CycleType), LPoly>,
    open_max: usize,
    closed_max: usize,
}

impl TraceTable {
    /// Open traces for `3 <= n <= open_max`, closed ones for
    /// `3 <= n <= closed_max`.
    pub fn build(open_max: usize, closed_max: usize) -> Result<Self> {
        let mut table = TraceTable {
            open_max,
            closed_max,
            ..Default::default()
        };
        for n in 3..=open_max {
            for t in partitions(n) {
                let tr = trace_open(&t)?;
                table.open.insert((n, t), tr);
            }
        }
        for n in 3..=closed_max {
            let trees = enumerate_stable_trees(n)?;
            let rows: Vec<(CycleType, LPoly)> = partitions(n)
                .into_par_iter()
                .map(|t| {
                    let rep = t.representative();
                    let tr = trace_closed_on(&trees, &rep)?;
                    let other = trace_closed_on(&trees, &conjugate_sample(&rep))?;
                    if tr != other {
                        return Err(Error::OracleMismatch(format!(
                            "closed trace for n = {n}, type {t} depends on the representative"
                        )));
                    }
                    Ok((t, tr))
                })
                .collect::<Result<_>>()?;
            for (t, tr) in rows {
                table.closed.insert((n, t), tr);
            }
        }
        Ok(table)
    }

    pub fn open_max(&self) -> usize {
        self.open_max
    }

    pub fn closed_max(&self) -> usize {
        self.closed_max
    }

    pub fn open(&self, t: &CycleType) -> Result<&LPoly> {
        self.open
            .get(&(t.size(), t.clone()))
            .ok_or_else(|| Error::MissingRecord(format!("open trace for {t}")))
    }

    pub fn closed(&self, t: &CycleType) -> Result<&LPoly> {
        let n = t.size();
        if n > self.closed_max {
            return Err(Error::CapExceeded {
                n,
                cap: self.closed_max,
            });
        }
        self.closed
            .get(&(n, t.clone()))
            .ok_or_else(|| Error::MissingRecord(format!("closed trace for {t}")))
    }

    pub fn to_json(&self) -> Result<String> {
        let entries = |m: &BTreeMap<(usize, CycleType), LPoly>| {
            m.iter()
                .map(|((n, t), p)| TraceEntry {
                    n: *n,
                    cycle_type: t.clone(),
                    trace: p.clone(),
                })
                .collect()
        };
        let file = TraceFile {
            open: entries(&self.open),
            closed: entries(&self.closed),
        };
        Ok(serde_json::to_string_pretty(&file)? + "\n")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: TraceFile = serde_json::from_str(s)?;
        let collect = |v: Vec<TraceEntry>| -> BTreeMap<(usize, CycleType), LPoly> {
            v.into_iter()
                .map(|e| ((e.n, e.cycle_type), e.trace))
                .collect()
        };
        let open = collect(file.open);
        let closed = collect(file.closed);
        let open_max = open.keys().map(|k| k.0).max().unwrap_or(0);
        let closed_max = closed.keys().map(|k| k.0).max().unwrap_or(0);
        Ok(TraceTable {
            open,
            closed,
            open_max,
            closed_max,
        })
    }

    pub fn cache_path(dir: &Path, open_max: usize, closed_max: usize) -> PathBuf {
        dir.join(format!("traces-o{open_max}-c{closed_max}.json"))
    }

    /// Reads the table from `dir` when a matching cache file parses,
    /// otherwise builds it and writes the file. The cache is advisory.
    pub fn load_or_build(dir: Option<&Path>, open_max: usize, closed_max: usize) -> Result<Self> {
        let Some(dir) = dir else {
            return Self::build(open_max, closed_max);
        };
        let path = Self::cache_path(dir, open_max, closed_max);
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(table) = Self::from_json(&text) {
                if table.open_max == open_max && table.closed_max == closed_max {
                    return Ok(table);
                }
            }
        }
        let table = Self::build(open_max, closed_max)?;
        std::fs::create_dir_all(dir)?;
        std::fs::write(&path, table.to_json()?)?;
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_plus_1() -> LPoly {
        LPoly::from_coeffs(vec![1, 1])
    }

    #[test]
    fn four_point_examples() {
        assert_eq!(trace_closed(&[0, 1, 2, 3]).unwrap(), q_plus_1());
        assert_eq!(trace_closed(&[1, 0, 3, 2]).unwrap(), q_plus_1());
        assert_eq!(trace_closed(&[1, 0, 2, 3]).unwrap(), q_plus_1());
    }

    #[test]
    fn five_point_identity() {
        assert_eq!(
            trace_closed(&[0, 1, 2, 3, 4]).unwrap(),
            LPoly::from_coeffs(vec![1, 5, 1])
        );
    }

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == used.len() {
                out.push(cur.clone());
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    go(cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    #[test]
    fn class_function_on_s5() {
        let table = TraceTable::build(5, 5).unwrap();
        let trees = enumerate_stable_trees(5).unwrap();
        for perm in all_perms(5) {
            let t = cycle_type_of(&perm);
            assert_eq!(
                &trace_closed_on(&trees, &perm).unwrap(),
                table.closed(&t).unwrap(),
                "{perm:?}"
            );
        }
    }

    #[test]
    fn json_round_trip_is_byte_stable() {
        let table = TraceTable::build(6, 5).unwrap();
        let text = table.to_json().unwrap();
        let back = TraceTable::from_json(&text).unwrap();
        assert_eq!(back, table);
        assert_eq!(back.to_json().unwrap(), text);
    }

    #[test]
    fn cache_file_matches_recomputation() {
        let dir = tempfile::tempdir().unwrap();
        let first = TraceTable::load_or_build(Some(dir.path()), 6, 6).unwrap();
        let path = TraceTable::cache_path(dir.path(), 6, 6);
        let bytes = std::fs::read(&path).unwrap();
        let second = TraceTable::load_or_build(Some(dir.path()), 6, 6).unwrap();
        assert_eq!(first, second);
        assert_eq!(
            TraceTable::build(6, 6)
                .unwrap()
                .to_json()
                .unwrap()
                .into_bytes(),
            bytes
        );

        std::fs::write(&path, "not json").unwrap();
        let rebuilt = TraceTable::load_or_build(Some(dir.path()), 6, 6).unwrap();
        assert_eq!(rebuilt, first);
    }

    #[test]
    fn missing_entries_error() {
        let table = TraceTable::build(5, 4).unwrap();
        assert!(matches!(
            table.closed(&CycleType::identity(5)),
            Err(Error::CapExceeded { .. })
        ));
        assert!(table.open(&CycleType::identity(6)).is_err());
    }
}
