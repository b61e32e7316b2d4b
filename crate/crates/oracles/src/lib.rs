//! Exhaustive reference solvers and instance generators.
//!
//! Everything in this crate is built for cross-validation: subset-table
//! solvers for the target problems, exact mim-width search, isomorphism-class
//! enumeration, seeded random instance generators, and join-decomposition
//! value combinators. All exhaustive routines enforce hard vertex caps and
//! fail loudly instead of running forever.

pub mod brute;
pub mod enumerate;
pub mod join;
pub mod mimwidth;
pub mod random;

/// Cap for subset-table construction (2^n masks).
pub const MAX_SUBSET_VERTICES: usize = 16;
/// Cap for exact mim-width layout search (3^n-flavoured subset DP).
pub const MAX_LAYOUT_VERTICES: usize = 8;
/// Cap for isomorphism-class enumeration (k! canonical forms per graph).
pub const MAX_ENUM_VERTICES: usize = 7;
/// Cap for exact vertex cover search.
pub const MAX_COVER_VERTICES: usize = 20;

pub use brute::{
    max_induced, max_induced_with, min_deletion, vertex_cover_number, SubsetTables,
};
pub use enumerate::{enumerate_graphs, permuted};
pub use join::{join_graph, join_values, values_of, JoinValues};
pub use mimwidth::mimwidth_at_most;
pub use random::{random_interval_instance, random_permutation_instance, random_relabeling};
