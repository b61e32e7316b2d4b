//! Optimum values across joins of graphs.
//!
//! The join of graphs adds every edge between distinct factors. The maximum
//! induced subgraph values of the target properties combine across a join by
//! closed formulas, which lets the exhaustive oracles reach instances far
//! beyond the subset cap when those instances decompose as joins of small
//! factors (as the generated hardness instances do).

use crate::brute::SubsetTables;
use mimsolve_core::error::Result;
use mimsolve_core::problems::ProblemKind;
use mimsolve_core::Graph;

/// Maximum induced subgraph sizes of one graph for the properties that
/// combine across joins.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JoinValues {
    pub clique: usize,
    pub cluster: usize,
    pub cocluster: usize,
    pub polar: usize,
    /// Largest union of a clique and a disjoint cocluster.
    pub clique_cocluster: usize,
}

/// Exhaustive values of one small factor.
pub fn values_of(g: &Graph) -> Result<JoinValues> {
    let t = SubsetTables::build(g)?;
    let n = g.n();
    let mut vals = JoinValues {
        clique: 0,
        cluster: 0,
        cocluster: 0,
        polar: 0,
        clique_cocluster: 0,
    };
    for mask in 0..(1u64 << n) as u32 {
        let size = mask.count_ones() as usize;
        if t.is_clique(mask) {
            vals.clique = vals.clique.max(size);
        }
        if t.is_cluster(mask) {
            vals.cluster = vals.cluster.max(size);
        }
        if t.is_cocluster(mask) {
            vals.cocluster = vals.cocluster.max(size);
        }
        if t.satisfies(ProblemKind::Polar, mask) {
            vals.polar = vals.polar.max(size);
        }
        // clique + cocluster split: scan submasks
        let mut sub = mask;
        loop {
            if t.is_clique(sub) && t.is_cocluster(mask & !sub) {
                vals.clique_cocluster = vals.clique_cocluster.max(size);
                break;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
    }
    Ok(vals)
}

/// Combines factor values across a join.
///
/// A clique of a join is a union of factor cliques. A cluster either lies in
/// one factor or spans several, in which case every cross pair is adjacent
/// and it must be a clique. A cocluster splits into factor coclusters, since
/// the complement of a join is the disjoint union of the complements. A
/// polar set's cluster part is either a spanning clique (each factor then
/// contributes a clique plus a cocluster) or lies inside one factor (which
/// then contributes a polar set, the others coclusters).
pub fn join_values(parts: &[JoinValues]) -> JoinValues {
    let clique: usize = parts.iter().map(|p| p.clique).sum();
    let cocluster: usize = parts.iter().map(|p| p.cocluster).sum();
    let cluster = parts
        .iter()
        .map(|p| p.cluster)
        .max()
        .unwrap_or(0)
        .max(clique);
    let clique_cocluster: usize = parts.iter().map(|p| p.clique_cocluster).sum();
    let mut polar = clique_cocluster;
    for (j, p) in parts.iter().enumerate() {
        let others: usize = parts
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .map(|(_, q)| q.cocluster)
            .sum();
        polar = polar.max(p.polar + others);
    }
    JoinValues {
        clique,
        cluster,
        cocluster,
        polar,
        clique_cocluster,
    }
}

/// Materializes the join of graphs: disjoint union plus all cross edges.
pub fn join_graph(parts: &[&Graph]) -> Graph {
    let mut g = Graph::disjoint_union(parts);
    let n = g.n();
    let mut offsets = Vec::with_capacity(parts.len());
    let mut acc = 0u32;
    for p in parts {
        offsets.push(acc);
        acc += p.n() as u32;
    }
    let mut edges = g.edges();
    for (pi, p) in parts.iter().enumerate() {
        let lo = offsets[pi];
        let hi = lo + p.n() as u32;
        for u in lo..hi {
            for v in hi..acc {
                edges.push((u, v));
            }
        }
    }
    g = Graph::from_edges(n, edges).expect("join edges are in range");
    g
}
