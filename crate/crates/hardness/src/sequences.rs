//! Block-size sequences of graphs and their lexicographic orders.
//!
//! Every connected graph is summarized by the non-increasing sequence of
//! block sizes around its best cut vertex; a graph is summarized by the
//! sorted list of those sequences over its components. The generator uses
//! the induced strict orders to certify that its gadget graph is minimal.

use std::collections::VecDeque;

use mimsolve_core::error::{Error, Result};
use mimsolve_core::graph::components;
use mimsolve_core::{Graph, VertexSet};

/// Non-increasing sequence of block sizes around one cut vertex (each
/// entry counts the block's vertices plus the cut vertex itself).
///
/// The derived order is the strict lexicographic order on sequences,
/// where a proper prefix sorts below its extensions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlphaSequence(Vec<usize>);

impl AlphaSequence {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::contract("alpha sequence must be non-empty"));
        }
        if entries.iter().any(|&e| e < 1) {
            return Err(Error::contract("alpha sequence entries must be at least 1"));
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::contract("alpha sequence must be non-increasing"));
        }
        Ok(AlphaSequence(entries))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }
}

/// Per-component alpha sequences, sorted lexicographically non-increasing.
///
/// The derived order compares the component sequences lexicographically,
/// again with a proper prefix sorting below its extensions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BetaSequence(Vec<AlphaSequence>);

impl BetaSequence {
    pub fn new(alphas: Vec<AlphaSequence>) -> Result<Self> {
        if alphas.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::contract(
                "beta sequence must be sorted non-increasing",
            ));
        }
        Ok(BetaSequence(alphas))
    }

    pub fn parts(&self) -> &[AlphaSequence] {
        &self.0
    }
}

/// Strict lexicographic comparison of alpha sequences.
pub fn alpha_lex_less(a: &AlphaSequence, b: &AlphaSequence) -> bool {
    a < b
}

/// Strict lexicographic comparison of beta sequences, including the
/// shorter-prefix rule: a beta that is a proper prefix of another is
/// strictly smaller.
pub fn beta_lex_less(a: &BetaSequence, b: &BetaSequence) -> bool {
    a < b
}

/// Vertices of `component` whose removal disconnects the rest of it.
pub fn cut_vertices(g: &Graph, component: &VertexSet) -> Vec<u32> {
    component
        .iter()
        .filter(|&c| {
            let mut rest = component.clone();
            rest.remove(c);
            !rest.is_empty() && components(g, &rest).len() > 1
        })
        .collect()
}

/// Block-size sequence of one connected component: for each cut vertex,
/// sort the sizes of the components left by its removal (each counted
/// with the cut vertex) non-increasingly, then return the lexicographic
/// minimum over all cut vertices. A component without a cut vertex
/// yields the single-entry sequence of its own size.
pub fn alpha_sequence(g: &Graph, component: &VertexSet) -> Result<AlphaSequence> {
    if component.is_empty() {
        return Err(Error::precondition("component must be non-empty"));
    }
    if components(g, component).len() != 1 {
        return Err(Error::precondition("component must be connected"));
    }
    let cuts = cut_vertices(g, component);
    if cuts.is_empty() {
        return AlphaSequence::new(vec![component.len()]);
    }
    let mut best: Option<AlphaSequence> = None;
    for c in cuts {
        let mut rest = component.clone();
        rest.remove(c);
        let mut sizes: Vec<usize> = components(g, &rest).iter().map(|b| b.len() + 1).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let alpha = AlphaSequence::new(sizes)?;
        if best.as_ref().map_or(true, |b| alpha < *b) {
            best = Some(alpha);
        }
    }
    Ok(best.expect("at least one cut vertex was processed"))
}

/// Alpha sequence of every component, sorted non-increasing.
pub fn beta_sequence(g: &Graph) -> Result<BetaSequence> {
    let all = VertexSet::full(g.n());
    let mut alphas = components(g, &all)
        .iter()
        .map(|comp| alpha_sequence(g, comp))
        .collect::<Result<Vec<_>>>()?;
    alphas.sort_unstable_by(|a, b| b.cmp(a));
    BetaSequence::new(alphas)
}

/// Length of a shortest cycle, or `None` for forests.
///
/// Runs a breadth-first search from every vertex; whenever a scanned edge
/// closes back into the visited region, the two root distances bound a
/// cycle through the root, and the minimum over all roots is exact.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![u32::MAX; n];
    for s in 0..n as u32 {
        dist.fill(usize::MAX);
        parent.fill(u32::MAX);
        dist[s as usize] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if dist[w as usize] == usize::MAX {
                    dist[w as usize] = dist[u as usize] + 1;
                    parent[w as usize] = u;
                    queue.push_back(w);
                } else if parent[u as usize] != w && w > u {
                    let len = dist[u as usize] + dist[w as usize] + 1;
                    if best.map_or(true, |b| len < b) {
                        best = Some(len);
                    }
                }
            }
        }
    }
    best
}
