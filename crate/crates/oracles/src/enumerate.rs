//! Exhaustive enumeration of small graphs up to isomorphism.
//!
//! Graphs are encoded as edge bitmasks over the pairs (i, j), i < j, in
//! lexicographic order. The canonical form of a graph is the smallest edge
//! mask over all vertex relabelings; the enumeration grows graphs one vertex
//! at a time, attaching the new vertex in every possible way to a canonical
//! smaller graph and canonicalizing the result. Deleting the last vertex of
//! any graph leaves a graph on one vertex fewer, so every isomorphism class
//! is reached.

use crate::MAX_ENUM_VERTICES;
use mimsolve_core::error::{Error, Result};
use mimsolve_core::Graph;
use std::collections::BTreeSet;

fn edge_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    // pairs (0,1), (0,2), .., (0,n-1), (1,2), ..
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut cur, &mut out);
    out
}

/// Edge-remap tables: for each permutation, old edge index -> new edge index.
fn edge_remaps(n: usize) -> Vec<Vec<usize>> {
    let perms = all_permutations(n);
    let m = n * (n - 1) / 2;
    perms
        .iter()
        .map(|p| {
            let mut table = vec![0usize; m];
            for i in 0..n {
                for j in (i + 1)..n {
                    let (a, b) = (p[i].min(p[j]), p[i].max(p[j]));
                    table[edge_index(n, i, j)] = edge_index(n, a, b);
                }
            }
            table
        })
        .collect()
}

fn canonical(mask: u64, remaps: &[Vec<usize>]) -> u64 {
    let mut best = u64::MAX;
    for table in remaps {
        let mut out = 0u64;
        let mut m = mask;
        while m != 0 {
            let e = m.trailing_zeros() as usize;
            m &= m - 1;
            out |= 1u64 << table[e];
        }
        best = best.min(out);
    }
    best
}

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if mask >> edge_index(n, i, j) & 1 == 1 {
                edges.push((i as u32, j as u32));
            }
        }
    }
    Graph::from_edges(n, edges).expect("enumerated edges are in range")
}

/// All graphs on `n` vertices up to isomorphism, in ascending canonical
/// edge-mask order. Capped at [`MAX_ENUM_VERTICES`] vertices.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_ENUM_VERTICES {
        return Err(Error::guard(format!(
            "graph enumeration supports 1 to {} vertices, got {}",
            MAX_ENUM_VERTICES, n
        )));
    }
    let mut canon: BTreeSet<u64> = BTreeSet::new();
    canon.insert(0);
    for k in 2..=n {
        let remaps = edge_remaps(k);
        // edges (i, k-1) have indices attach(i) below
        let attach: Vec<usize> = (0..k - 1).map(|i| edge_index(k, i, k - 1)).collect();
        let mut next: BTreeSet<u64> = BTreeSet::new();
        for &base in &canon {
            // spread the old edge bits into the larger indexing
            let mut spread = 0u64;
            for i in 0..k - 1 {
                for j in (i + 1)..(k - 1) {
                    if base >> edge_index(k - 1, i, j) & 1 == 1 {
                        spread |= 1u64 << edge_index(k, i, j);
                    }
                }
            }
            for att in 0..(1u64 << (k - 1)) {
                let mut mask = spread;
                for (i, &e) in attach.iter().enumerate() {
                    if att >> i & 1 == 1 {
                        mask |= 1u64 << e;
                    }
                }
                next.insert(canonical(mask, &remaps));
            }
        }
        canon = next;
    }
    Ok(canon.into_iter().map(|m| graph_from_mask(n, m)).collect())
}

/// Relabels a graph by a permutation: vertex `v` becomes `perm[v]`.
pub fn permuted(g: &Graph, perm: &[u32]) -> Result<Graph> {
    let n = g.n();
    if perm.len() != n {
        return Err(Error::contract(format!(
            "permutation of length {} for {} vertices",
            perm.len(),
            n
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p as usize >= n || seen[p as usize] {
            return Err(Error::contract("not a permutation".to_string()));
        }
        seen[p as usize] = true;
    }
    Graph::from_edges(
        n,
        g.edges()
            .into_iter()
            .map(|(u, v)| (perm[u as usize], perm[v as usize])),
    )
}
