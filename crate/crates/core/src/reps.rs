//! Representatives of vertex subsets at chain cuts.
//!
//! At a chain cut, two subsets with the same small representative behave
//! identically against every choice on the other side of the cut, so dynamic
//! programming only needs the representatives. Cluster sets keep the head and
//! tail of their first component and the head of their second; co-cluster
//! sets are cluster sets of the complement under the reversed order;
//! independent sets keep their head; connectivity tracking keeps the heads of
//! the first and last component.
//!
//! Heads are order-maxima, tails order-minima, and components are indexed by
//! strictly decreasing heads, so the "first" component is the one whose head
//! is largest in the governing order.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::order::TotalOrder;
use smallvec::SmallVec;

/// Sentinel for an absent representative slot.
pub const NONE_VERTEX: u32 = u32::MAX;

/// Representative of a cluster set: head and tail of the first component and
/// head of the second, `NONE_VERTEX` where absent.
///
/// Valid patterns: empty; a single vertex (`h1 == t1`); an adjacent pair
/// (`h1`, `t1` distinct); each optionally with a second-component head `h2`
/// that is non-adjacent to both and smaller than `h1` in the governing order.
/// The tail may sit on either side of `h2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ClusterRep {
    pub h1: u32,
    pub t1: u32,
    pub h2: u32,
}

impl ClusterRep {
    pub const EMPTY: ClusterRep = ClusterRep {
        h1: NONE_VERTEX,
        t1: NONE_VERTEX,
        h2: NONE_VERTEX,
    };

    /// Vertices present in the representative set.
    pub fn set(&self) -> SmallVec<[u32; 3]> {
        let mut out = SmallVec::new();
        for v in [self.h1, self.t1, self.h2] {
            if v != NONE_VERTEX && !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.h1 == NONE_VERTEX
    }

    /// True when the represented sets have at most one component.
    pub fn single_component(&self) -> bool {
        self.h2 == NONE_VERTEX
    }
}

/// Representative of a co-cluster set: the cluster representative of the same
/// set in the complement graph under the reversed order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CoClusterRep(pub ClusterRep);

/// Representative of an independent set: its head, or `NONE_VERTEX`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct IndependenceRep {
    pub head: u32,
}

/// Connectivity representative of an arbitrary set: heads of its first and
/// last components. Distinct heads are necessarily non-adjacent.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ConnectivityRep {
    pub first: u32,
    pub last: u32,
}

impl ConnectivityRep {
    pub const EMPTY: ConnectivityRep = ConnectivityRep {
        first: NONE_VERTEX,
        last: NONE_VERTEX,
    };

    /// True when the represented sets are connected (or empty).
    pub fn connected(&self) -> bool {
        self.first == self.last
    }

    pub fn set(&self) -> SmallVec<[u32; 2]> {
        let mut out = SmallVec::new();
        for v in [self.first, self.last] {
            if v != NONE_VERTEX && !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }
}

/// Components of an explicit vertex list under a pluggable adjacency,
/// returned in decreasing head order (heads are order-maxima).
fn list_components(
    verts: &[u32],
    adjacent: &mut dyn FnMut(u32, u32) -> bool,
    order: &TotalOrder,
    reversed: bool,
) -> SmallVec<[SmallVec<[u32; 6]>; 4]> {
    let k = verts.len();
    let mut comp_id: SmallVec<[usize; 8]> = (0..k).collect();
    // Union-find over at most a handful of vertices.
    fn find(ids: &mut SmallVec<[usize; 8]>, mut i: usize) -> usize {
        while ids[i] != i {
            ids[i] = ids[ids[i]];
            i = ids[i];
        }
        i
    }
    for i in 0..k {
        for j in (i + 1)..k {
            if adjacent(verts[i], verts[j]) {
                let (a, b) = (find(&mut comp_id, i), find(&mut comp_id, j));
                if a != b {
                    comp_id[a] = b;
                }
            }
        }
    }
    let mut comps: SmallVec<[SmallVec<[u32; 6]>; 4]> = SmallVec::new();
    let mut roots: SmallVec<[usize; 8]> = SmallVec::new();
    for i in 0..k {
        let r = find(&mut comp_id, i);
        match roots.iter().position(|&x| x == r) {
            Some(p) => comps[p].push(verts[i]),
            None => {
                roots.push(r);
                let mut c = SmallVec::new();
                c.push(verts[i]);
                comps.push(c);
            }
        }
    }
    let rank = |v: u32| -> i64 {
        let r = order.rank(v) as i64;
        if reversed {
            -r
        } else {
            r
        }
    };
    let head_rank = |c: &SmallVec<[u32; 6]>| c.iter().map(|&v| rank(v)).max().unwrap();
    comps.sort_by_key(|c| std::cmp::Reverse(head_rank(c)));
    comps
}

fn head_and_tail(
    comp: &[u32],
    order: &TotalOrder,
    reversed: bool,
) -> (u32, u32) {
    let rank = |v: u32| -> i64 {
        let r = order.rank(v) as i64;
        if reversed {
            -r
        } else {
            r
        }
    };
    let head = *comp.iter().max_by_key(|&&v| rank(v)).unwrap();
    let tail = *comp.iter().min_by_key(|&&v| rank(v)).unwrap();
    (head, tail)
}

/// Cluster-style representative of an explicit list under a pluggable
/// adjacency and order direction. `None` when some component is not a clique.
pub(crate) fn cluster_like_rep(
    verts: &[u32],
    adjacent: &mut dyn FnMut(u32, u32) -> bool,
    order: &TotalOrder,
    reversed: bool,
) -> Option<ClusterRep> {
    let comps = list_components(verts, adjacent, order, reversed);
    for c in &comps {
        for i in 0..c.len() {
            for j in (i + 1)..c.len() {
                if !adjacent(c[i], c[j]) {
                    return None;
                }
            }
        }
    }
    let mut rep = ClusterRep::EMPTY;
    if let Some(c1) = comps.first() {
        let (h, t) = head_and_tail(c1, order, reversed);
        rep.h1 = h;
        rep.t1 = t;
    }
    if comps.len() > 1 {
        let (h, _) = head_and_tail(&comps[1], order, reversed);
        rep.h2 = h;
    }
    Some(rep)
}

fn check_domain(s: &[u32], order: &TotalOrder) -> Result<()> {
    for &v in s {
        if !order.covers(v) {
            return Err(Error::contract(format!(
                "vertex {} is not covered by the governing order",
                v
            )));
        }
    }
    Ok(())
}

/// Cluster representative of an explicit vertex list. Contract error when the
/// induced subgraph is not a cluster.
pub fn cluster_rep_of_list(g: &Graph, verts: &[u32], order: &TotalOrder) -> Result<ClusterRep> {
    check_domain(verts, order)?;
    cluster_like_rep(verts, &mut |u, v| g.has_edge(u, v), order, false)
        .ok_or_else(|| Error::contract("set is not a cluster set"))
}

/// Co-cluster representative of an explicit vertex list: cluster
/// representative in the complement under the reversed order. Contract error
/// when the set is not a co-cluster set.
pub fn cocluster_rep_of_list(g: &Graph, verts: &[u32], order: &TotalOrder) -> Result<CoClusterRep> {
    check_domain(verts, order)?;
    cluster_like_rep(verts, &mut |u, v| !g.has_edge(u, v), order, true)
        .map(CoClusterRep)
        .ok_or_else(|| Error::contract("set is not a co-cluster set"))
}

/// Independence representative: the head of the list. Contract error when the
/// list is not independent.
pub fn independence_rep_of_list(
    g: &Graph,
    verts: &[u32],
    order: &TotalOrder,
) -> Result<IndependenceRep> {
    check_domain(verts, order)?;
    for i in 0..verts.len() {
        for j in (i + 1)..verts.len() {
            if g.has_edge(verts[i], verts[j]) {
                return Err(Error::contract("set is not independent"));
            }
        }
    }
    Ok(IndependenceRep {
        head: verts
            .iter()
            .copied()
            .max_by_key(|&v| order.rank(v))
            .unwrap_or(NONE_VERTEX),
    })
}

/// Connectivity representative of an explicit vertex list: heads of the first
/// and last components. Defined for every set.
pub fn connectivity_rep_of_list(
    g: &Graph,
    verts: &[u32],
    order: &TotalOrder,
) -> Result<ConnectivityRep> {
    check_domain(verts, order)?;
    let comps = list_components(verts, &mut |u, v| g.has_edge(u, v), order, false);
    match comps.len() {
        0 => Ok(ConnectivityRep::EMPTY),
        k => {
            let (first, _) = head_and_tail(&comps[0], order, false);
            let (last, _) = head_and_tail(&comps[k - 1], order, false);
            Ok(ConnectivityRep { first, last })
        }
    }
}

/// Cluster representative of a subset. Contract error when the subset does
/// not induce a cluster.
pub fn cluster_rep(g: &Graph, s: &VertexSet, order: &TotalOrder) -> Result<ClusterRep> {
    cluster_rep_of_list(g, &s.to_vec(), order)
}

/// Co-cluster representative of a subset. Contract error when the subset does
/// not induce a co-cluster.
pub fn cocluster_rep(g: &Graph, s: &VertexSet, order: &TotalOrder) -> Result<CoClusterRep> {
    cocluster_rep_of_list(g, &s.to_vec(), order)
}

/// Independence representative of a subset. Contract error when the subset is
/// not independent.
pub fn independence_rep(g: &Graph, s: &VertexSet, order: &TotalOrder) -> Result<IndependenceRep> {
    independence_rep_of_list(g, &s.to_vec(), order)
}

/// Connectivity representative of a subset.
pub fn connectivity_rep(g: &Graph, s: &VertexSet, order: &TotalOrder) -> Result<ConnectivityRep> {
    connectivity_rep_of_list(g, &s.to_vec(), order)
}

fn merged_list(a: &[u32], b: &[u32]) -> SmallVec<[u32; 6]> {
    let mut out: SmallVec<[u32; 6]> = SmallVec::new();
    for &v in a.iter().chain(b.iter()) {
        if v != NONE_VERTEX && !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Representative of the union of two cluster representative sets under a
/// common order. `None` is the infeasibility marker: the union of the
/// representative sets is not a cluster set, so no pair of represented sets
/// can combine.
pub fn cluster_rep_union(
    g: &Graph,
    r1: &ClusterRep,
    r2: &ClusterRep,
    order: &TotalOrder,
) -> Option<ClusterRep> {
    let verts = merged_list(&r1.set(), &r2.set());
    cluster_like_rep(&verts, &mut |u, v| g.has_edge(u, v), order, false)
}

/// Union analogue of [`cluster_rep_union`] for co-cluster representatives.
pub fn cocluster_rep_union(
    g: &Graph,
    r1: &CoClusterRep,
    r2: &CoClusterRep,
    order: &TotalOrder,
) -> Option<CoClusterRep> {
    let verts = merged_list(&r1.0.set(), &r2.0.set());
    cluster_like_rep(&verts, &mut |u, v| !g.has_edge(u, v), order, true).map(CoClusterRep)
}

/// Union analogue for independence representatives.
pub fn independence_rep_union(
    g: &Graph,
    r1: &IndependenceRep,
    r2: &IndependenceRep,
    order: &TotalOrder,
) -> Option<IndependenceRep> {
    let a = [r1.head, r2.head];
    let verts: SmallVec<[u32; 2]> = a.iter().copied().filter(|&v| v != NONE_VERTEX).collect();
    if verts.len() == 2 && (verts[0] == verts[1] || g.has_edge(verts[0], verts[1])) {
        return None;
    }
    Some(IndependenceRep {
        head: verts.iter().copied().max_by_key(|&v| order.rank(v)).unwrap_or(NONE_VERTEX),
    })
}

/// Connectivity representative of the union of two represented sets, computed
/// on the explicit head vertices. Exact at chain cuts: cross edges between
/// component intervals are governed by head adjacency, so merging the four
/// heads reproduces the representative of the full union.
pub fn connectivity_rep_union(
    g: &Graph,
    r1: &ConnectivityRep,
    r2: &ConnectivityRep,
    order: &TotalOrder,
) -> ConnectivityRep {
    let verts = merged_list(&r1.set(), &r2.set());
    connectivity_rep_of_list(g, &verts, order).expect("connectivity rep is total")
}

/// All fixed-point cluster representatives over a node's vertex set: the
/// representatives of cluster subsets of size at most three whose own
/// representative keeps every vertex.
pub fn enumerate_cluster_reps(
    g: &Graph,
    domain: &VertexSet,
    order: &TotalOrder,
) -> Vec<ClusterRep> {
    enumerate_cluster_like(domain, order, false, &mut |u, v| g.has_edge(u, v))
}

/// Fixed-point co-cluster representatives over a node's vertex set.
pub fn enumerate_cocluster_reps(
    g: &Graph,
    domain: &VertexSet,
    order: &TotalOrder,
) -> Vec<CoClusterRep> {
    enumerate_cluster_like(domain, order, true, &mut |u, v| !g.has_edge(u, v))
        .into_iter()
        .map(CoClusterRep)
        .collect()
}

fn enumerate_cluster_like(
    domain: &VertexSet,
    order: &TotalOrder,
    reversed: bool,
    adjacent: &mut dyn FnMut(u32, u32) -> bool,
) -> Vec<ClusterRep> {
    let verts = domain.to_vec();
    let mut out = vec![ClusterRep::EMPTY];
    let push_fixed_point = |set: &[u32], adjacent: &mut dyn FnMut(u32, u32) -> bool,
                            out: &mut Vec<ClusterRep>| {
        if let Some(rep) = cluster_like_rep(set, adjacent, order, reversed) {
            let kept = rep.set();
            if kept.len() == set.len() && set.iter().all(|v| kept.contains(v)) {
                out.push(rep);
            }
        }
    };
    for i in 0..verts.len() {
        push_fixed_point(&[verts[i]], adjacent, &mut out);
        for j in (i + 1)..verts.len() {
            push_fixed_point(&[verts[i], verts[j]], adjacent, &mut out);
            for k in (j + 1)..verts.len() {
                push_fixed_point(&[verts[i], verts[j], verts[k]], adjacent, &mut out);
            }
        }
    }
    out
}

/// Fixed-point independence representatives: empty plus one per vertex.
pub fn enumerate_independence_reps(domain: &VertexSet) -> Vec<IndependenceRep> {
    let mut out = vec![IndependenceRep { head: NONE_VERTEX }];
    out.extend(domain.iter().map(|v| IndependenceRep { head: v }));
    out
}

/// Fixed-point connectivity representatives: empty, singletons, and
/// non-adjacent ordered pairs.
pub fn enumerate_connectivity_reps(
    g: &Graph,
    domain: &VertexSet,
    order: &TotalOrder,
) -> Vec<ConnectivityRep> {
    let verts = domain.to_vec();
    let mut out = vec![ConnectivityRep::EMPTY];
    for &v in &verts {
        out.push(ConnectivityRep { first: v, last: v });
    }
    for &u in &verts {
        for &v in &verts {
            if order.less(v, u) && !g.has_edge(u, v) {
                out.push(ConnectivityRep { first: u, last: v });
            }
        }
    }
    out
}
