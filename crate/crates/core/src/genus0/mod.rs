//! Genus-0 base: twisted point counts on `M_{0,n}` and `\bar M_{0,n}`,
//! Burnside averages over the Young subgroup, and purity.

pub mod closed;
pub mod counting;
pub mod sector;
pub mod trees;

pub use closed::{trace_closed, trace_closed_on, TraceTable};
pub use counting::{exact_degree_count, mobius, pgl2_order, trace_open};
pub use sector::{chi_closed, chi_open, chi_to_poincare_closed, chi_to_poincare_open, dualize};
pub use trees::{enumerate_stable_trees, StableTree, Vertex, TREE_CAP};
