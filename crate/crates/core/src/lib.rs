//! Maximum induced subgraph problems on graphs of linear structure.
//!
//! A branch decomposition (here: a rooted layout) whose every cut induces a
//! chain graph makes a family of maximum induced subgraph problems tractable:
//! cluster, clique, polar, split, and the triple-free variants, each with an
//! optional connectivity constraint. This crate provides the graph and layout
//! types, the chain order machinery, representative computations, the solver,
//! witness certification, width validation, and file formats.

pub mod bitset;
pub mod builders;
pub mod certify;
pub mod chain_orders;
pub mod dp;
pub mod error;
pub mod graph;
pub mod io;
pub mod layout;
pub mod order;
pub mod par;
pub mod problems;
pub mod reps;

pub use bitset::VertexSet;
pub use builders::{
    cotree_graph, cotree_layout, interval_graph, interval_layout, permutation_graph,
    permutation_layout, Cotree, Interval,
};
pub use chain_orders::{
    compute_chain_orders, parse_chain_orders, verify_chain_orders, write_chain_orders,
    ChainOrderReport, ChainOrders,
};
pub use dp::{solve, solve_traced, SolveResult, SolveStats};
pub use error::{Error, Result};
pub use graph::{max_induced_matching_in_cut, Graph};
pub use io::{parse_dimacs, parse_newick_layout, write_dimacs, write_newick_layout};
pub use layout::{
    graft, layout_from_order, validate_width, LayoutTree, LinearLayout, RootedLayout, WidthReport,
};
pub use order::TotalOrder;
pub use problems::{certify_parts, plan_for, Plan, ProblemKind};
