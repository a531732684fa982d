//! Stable trees: dual graphs of stable marked genus-0 curves.
//!
//! A tree with `n` labelled legs is determined by its edges, and each edge
//! is determined by the bipartition of the legs it induces. We store an edge
//! as a bitmask of the side *not* containing leg 0; the sorted list of these
//! masks is the canonical form. Both sides of every split have at least two
//! legs, which is exactly the stability condition. Legs are `0..n`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest `n` for which [`enumerate_stable_trees`] will run.
pub const TREE_CAP: usize = 9;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StableTree {
    n: usize,
    splits: Vec<u32>,
}

/// A vertex, described by the partition of the legs into the branches that
/// leave it. One block per flag.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Vertex {
    pub blocks: Vec<u32>,
}

impl Vertex {
    pub fn valence(&self) -> usize {
        self.blocks.len()
    }
}

fn full_mask(n: usize) -> u32 {
    ((1u64 << n) - 1) as u32
}

fn compatible(a: u32, b: u32) -> bool {
    a & b == 0 || a & b == a || a & b == b
}

/// Image of a leg set under a permutation of the legs.
pub fn permute_mask(mask: u32, perm: &[usize]) -> u32 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out |= 1 << perm[i];
        m &= m - 1;
    }
    out
}

impl StableTree {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn splits(&self) -> &[u32] {
        &self.splits
    }

    pub fn edge_count(&self) -> usize {
        self.splits.len()
    }

    fn normalize(&self, mask: u32) -> u32 {
        if mask & 1 == 1 {
            full_mask(self.n) & !mask
        } else {
            mask
        }
    }

    /// Vertices, each as its partition of the legs.
    pub fn vertices(&self) -> Vec<Vertex> {
        let full = full_mask(self.n);
        // Rooted at leg 0: every split is a clade, plus the clade of all
        // other legs, which sits at the vertex carrying leg 0.
        let mut clades: Vec<u32> = self.splits.clone();
        clades.push(full & !1);
        let mut out = Vec::with_capacity(clades.len());
        for &c in &clades {
            let inner: Vec<u32> = clades
                .iter()
                .copied()
                .filter(|&d| d != c && d & c == d)
                .collect();
            let children: Vec<u32> = inner
                .iter()
                .copied()
                .filter(|&d| !inner.iter().any(|&e| e != d && e & d == d))
                .collect();
            let covered = children.iter().fold(0, |acc, &d| acc | d);
            let mut blocks = children;
            let mut loose = c & !covered;
            while loose != 0 {
                let bit = loose & loose.wrapping_neg();
                blocks.push(bit);
                loose &= loose - 1;
            }
            blocks.push(full & !c);
            blocks.sort_unstable();
            out.push(Vertex { blocks });
        }
        out.sort();
        out
    }

    /// Whether the leg permutation `perm` maps the tree to itself.
    pub fn is_fixed_by(&self, perm: &[usize]) -> bool {
        self.splits.iter().all(|&s| {
            let img = self.normalize(permute_mask(s, perm));
            self.splits.binary_search(&img).is_ok()
        })
    }

    /// Canonical string encoding, e.g. `5:{0,1}|{2,3,4}` for one edge.
    pub fn encode(&self) -> String {
        let full = full_mask(self.n);
        let set = |m: u32| {
            let legs: Vec<String> = (0..self.n)
                .filter(|i| m >> i & 1 == 1)
                .map(|i| i.to_string())
                .collect();
            format!("{{{}}}", legs.join(","))
        };
        let edges: Vec<String> = self
            .splits
            .iter()
            .map(|&s| format!("{}|{}", set(full & !s), set(s)))
            .collect();
        format!("{}:{}", self.n, edges.join(";"))
    }
}

impl fmt::Display for StableTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Debug for StableTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StableTree({})", self.encode())
    }
}

/// One representative per labelled isomorphism class of stable trees with
/// `n` legs, i.e. one per boundary stratum of `\bar M_{0,n}`.
pub fn enumerate_stable_trees(n: usize) -> Result<Vec<StableTree>> {
    if n > TREE_CAP {
        return Err(Error::CapExceeded { n, cap: TREE_CAP });
    }
    if n < 3 {
        return Err(Error::Unsupported(format!("no stable trees with {n} legs")));
    }
    let candidates: Vec<u32> = (0..=full_mask(n))
        .filter(|&m| m & 1 == 0)
        .filter(|m| (2..=n as u32 - 2).contains(&m.count_ones()))
        .collect();

    fn extend(
        start: usize,
        candidates: &[u32],
        chosen: &mut Vec<u32>,
        n: usize,
        out: &mut Vec<StableTree>,
    ) {
        out.push(StableTree {
            n,
            splits: chosen.clone(),
        });
        for idx in start..candidates.len() {
            let s = candidates[idx];
            if chosen.iter().all(|&c| compatible(c, s)) {
                chosen.push(s);
                extend(idx + 1, candidates, chosen, n, out);
                chosen.pop();
            }
        }
    }

    let mut out = Vec::new();
    extend(0, &candidates, &mut Vec::new(), n, &mut out);
    out.sort();
    Ok(out)
}

/// Index from vertex to position, for following a permutation around.
pub(crate) fn vertex_index(vertices: &[Vertex]) -> HashMap<&Vertex, usize> {
    vertices.iter().enumerate().map(|(i, v)| (v, i)).collect()
}

pub(crate) fn permute_vertex(v: &Vertex, perm: &[usize]) -> Vertex {
    let mut blocks: Vec<u32> = v.blocks.iter().map(|&b| permute_mask(b, perm)).collect();
    blocks.sort_unstable();
    Vertex { blocks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stratum_counts() {
        let counts: Vec<usize> = (3..=8)
            .map(|n| enumerate_stable_trees(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 4, 26, 236, 2752, 39208]);
    }

    #[test]
    fn five_legs_by_edge_count() {
        let trees = enumerate_stable_trees(5).unwrap();
        let by_edges: Vec<usize> = (0..=2)
            .map(|e| trees.iter().filter(|t| t.edge_count() == e).count())
            .collect();
        assert_eq!(by_edges, vec![1, 10, 15]);
    }

    #[test]
    fn trees_are_stable_and_well_formed() {
        for n in 3..=7 {
            for t in enumerate_stable_trees(n).unwrap() {
                let verts = t.vertices();
                assert_eq!(verts.len(), t.edge_count() + 1, "{t}");
                let mut flags = 0;
                for v in &verts {
                    assert!(v.valence() >= 3, "{t}");
                    assert_eq!(v.blocks.iter().fold(0, |a, &b| a | b), full_mask(n));
                    flags += v.valence();
                }
                // every leg once, every edge twice
                assert_eq!(flags, n + 2 * t.edge_count());
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_stable_trees(TREE_CAP + 1),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn encoding_is_injective() {
        let trees = enumerate_stable_trees(6).unwrap();
        let mut codes: Vec<String> = trees.iter().map(StableTree::encode).collect();
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), trees.len());
    }

    #[test]
    fn fixedness_under_double_transposition() {
        // (01)(23) on four legs fixes all four strata of M_{0,4}-bar.
        let perm = [1, 0, 3, 2];
        let trees = enumerate_stable_trees(4).unwrap();
        assert!(trees.iter().all(|t| t.is_fixed_by(&perm)));
        // (01) alone fixes the open stratum and {01|23} only.
        let swap = [1, 0, 2, 3];
        assert_eq!(trees.iter().filter(|t| t.is_fixed_by(&swap)).count(), 2);
    }
}
