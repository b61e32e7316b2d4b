//! Hardness-instance generation.
//!
//! This crate turns small vertex-cover inputs into induced-subgraph
//! instances whose linear layouts certify low mim-width, following the
//! copy-and-gadget reduction: block-size sequences pick the gadget base,
//! the builder assembles the decorated complement graph with its layout,
//! and the sanity checker replays the cover/deletion equivalence against
//! brute-force oracles.

pub mod base;
pub mod reduction;
pub mod sequences;

pub use base::{ForbiddenBase, Preset};
pub use reduction::{build_reduction, reduction_sanity, Reduction};
pub use sequences::{
    alpha_lex_less, alpha_sequence, beta_lex_less, beta_sequence, cut_vertices, girth,
    AlphaSequence, BetaSequence,
};
