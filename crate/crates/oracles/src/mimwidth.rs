//! Exhaustive width search: does a graph admit a layout in which every
//! cut's induced matching stays within a bound?

use crate::MAX_LAYOUT_VERTICES;
use mimsolve_core::error::{Error, Result};
use mimsolve_core::graph::max_induced_matching_in_cut;
use mimsolve_core::layout::{LayoutTree, RootedLayout};
use mimsolve_core::{Graph, VertexSet};

/// Searches all layouts for one of width at most `w`, by subset dynamic
/// programming: a vertex set is feasible when its own cut (against the whole
/// rest of the graph) respects the bound and it splits into two feasible
/// halves. Fixing the lowest vertex into the first half makes each split
/// unique, which is exactly the symmetry of an unordered binary tree.
/// Returns a witness layout, or `None` when every layout exceeds the bound.
pub fn mimwidth_at_most(g: &Graph, w: usize) -> Result<Option<RootedLayout>> {
    let n = g.n();
    if n > MAX_LAYOUT_VERTICES {
        return Err(Error::guard(format!(
            "layout search supports at most {} vertices, got {}",
            MAX_LAYOUT_VERTICES, n
        )));
    }
    if n == 0 {
        return Err(Error::precondition(
            "cannot lay out an empty graph".to_string(),
        ));
    }
    let size = 1usize << n;
    let mut ok_cut = vec![false; size];
    for mask in 1..size as u32 {
        let a = VertexSet::from_iter(n, mask_vertices(mask));
        ok_cut[mask as usize] = max_induced_matching_in_cut(g, &a, w)? <= w;
    }
    // chosen split per feasible mask; u32::MAX marks infeasible, 0 a leaf
    const INFEASIBLE: u32 = u32::MAX;
    let mut split = vec![INFEASIBLE; size];
    for mask in 1..size as u32 {
        let m = mask as usize;
        if !ok_cut[m] {
            continue;
        }
        if mask.count_ones() == 1 {
            split[m] = 0;
            continue;
        }
        let low = 1u32 << mask.trailing_zeros();
        // iterate proper submasks containing the lowest vertex, ascending:
        // sub walks the submasks of the remaining bits via (sub - rest) & rest
        let rest = mask & !low;
        let mut sub = 0u32;
        loop {
            let a = low | sub;
            if a != mask
                && split[a as usize] != INFEASIBLE
                && split[(mask & !a) as usize] != INFEASIBLE
            {
                split[m] = a;
                break;
            }
            if sub == rest {
                break;
            }
            sub = sub.wrapping_sub(rest) & rest;
        }
    }
    let full = (size - 1) as u32;
    if split[full as usize] == INFEASIBLE {
        return Ok(None);
    }
    let tree = build_tree(&split, full);
    Ok(Some(RootedLayout::from_tree(&tree, n)?))
}

fn build_tree(split: &[u32], mask: u32) -> LayoutTree {
    if mask.count_ones() == 1 {
        return LayoutTree::Leaf(mask.trailing_zeros());
    }
    let a = split[mask as usize];
    LayoutTree::node(build_tree(split, a), build_tree(split, mask & !a))
}

fn mask_vertices(mask: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros());
        m &= m - 1;
    }
    out
}
