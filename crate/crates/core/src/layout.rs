//! Rooted layouts (branch decompositions), width validation, and the
//! assembly operations used to build layouts for derived graphs.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{cut_mim_exceeds, is_chain_cut, Graph};
use crate::par::maybe_par_map;

/// Work budget per cut when validating width bounds of 2 or more; the
/// validator reports a size error when a single cut exhausts it.
const CUT_SEARCH_BUDGET: u64 = 50_000_000;

/// A full binary tree with graph vertices at the leaves, used as the
/// construction/serialization form of a layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LayoutTree {
    Leaf(u32),
    Node(Box<LayoutTree>, Box<LayoutTree>),
}

impl LayoutTree {
    pub fn node(left: LayoutTree, right: LayoutTree) -> LayoutTree {
        LayoutTree::Node(Box::new(left), Box::new(right))
    }

    /// Leaf vertices in left-to-right order.
    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match self {
            LayoutTree::Leaf(v) => out.push(*v),
            LayoutTree::Node(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }
}

/// One node of a flattened layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayoutNode {
    Leaf(u32),
    Internal { left: usize, right: usize },
}

/// A rooted layout: a full binary tree over an ambient vertex universe
/// 0..n-1, stored in postorder (children precede parents, root last),
/// with the vertex set below each node precomputed.
///
/// Leaf vertices are always distinct; coverage of the full universe is
/// checked where an operation needs it (validation, solving), so that
/// partial layouts can be assembled and grafted first.
#[derive(Debug, Clone)]
pub struct RootedLayout {
    nodes: Vec<LayoutNode>,
    parent: Vec<usize>,
    sets: Vec<VertexSet>,
    n: usize,
}

/// Parent marker for the root node.
pub const NO_PARENT: usize = usize::MAX;

impl RootedLayout {
    /// Flattens a layout tree over the universe 0..n-1. Leaf vertices
    /// must be in range and pairwise distinct.
    pub fn from_tree(tree: &LayoutTree, n: usize) -> Result<RootedLayout> {
        let mut layout = RootedLayout {
            nodes: Vec::new(),
            parent: Vec::new(),
            sets: Vec::new(),
            n,
        };
        let mut seen = VertexSet::new(n);
        let root = layout.flatten(tree, &mut seen)?;
        debug_assert_eq!(root + 1, layout.nodes.len());
        Ok(layout)
    }

    fn flatten(&mut self, tree: &LayoutTree, seen: &mut VertexSet) -> Result<usize> {
        match tree {
            LayoutTree::Leaf(v) => {
                if *v as usize >= self.n {
                    return Err(Error::parse(format!(
                        "layout leaf {} out of range for {} vertices",
                        v, self.n
                    )));
                }
                if seen.contains(*v) {
                    return Err(Error::parse(format!("layout repeats vertex {}", v)));
                }
                seen.insert(*v);
                self.nodes.push(LayoutNode::Leaf(*v));
                self.parent.push(NO_PARENT);
                self.sets.push(VertexSet::from_iter(self.n, [*v]));
                Ok(self.nodes.len() - 1)
            }
            LayoutTree::Node(l, r) => {
                let left = self.flatten(l, seen)?;
                let right = self.flatten(r, seen)?;
                let id = self.nodes.len();
                self.nodes.push(LayoutNode::Internal { left, right });
                self.parent.push(NO_PARENT);
                self.parent[left] = id;
                self.parent[right] = id;
                self.sets.push(self.sets[left].union(&self.sets[right]));
                Ok(id)
            }
        }
    }

    /// Number of tree nodes.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Ambient vertex universe size.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Index of the root node (always the last node in postorder).
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn node(&self, id: usize) -> LayoutNode {
        self.nodes[id]
    }

    /// Parent of a node, or [`NO_PARENT`] for the root.
    pub fn parent(&self, id: usize) -> usize {
        self.parent[id]
    }

    pub fn children(&self, id: usize) -> Option<(usize, usize)> {
        match self.nodes[id] {
            LayoutNode::Leaf(_) => None,
            LayoutNode::Internal { left, right } => Some((left, right)),
        }
    }

    pub fn leaf_vertex(&self, id: usize) -> Option<u32> {
        match self.nodes[id] {
            LayoutNode::Leaf(v) => Some(v),
            LayoutNode::Internal { .. } => None,
        }
    }

    /// Vertices below node `id`.
    pub fn set(&self, id: usize) -> &VertexSet {
        &self.sets[id]
    }

    /// Vertices covered by the whole layout.
    pub fn covered(&self) -> &VertexSet {
        &self.sets[self.root()]
    }

    /// Does the layout's leaf set cover the entire universe?
    pub fn is_total(&self) -> bool {
        self.covered().len() == self.n
    }

    /// Rebuilds the construction tree.
    pub fn to_tree(&self) -> LayoutTree {
        self.subtree(self.root())
    }

    fn subtree(&self, id: usize) -> LayoutTree {
        match self.nodes[id] {
            LayoutNode::Leaf(v) => LayoutTree::Leaf(v),
            LayoutNode::Internal { left, right } => {
                LayoutTree::node(self.subtree(left), self.subtree(right))
            }
        }
    }

    /// Removes the given vertices' leaves, smoothing out internal nodes
    /// left with a single child, and renumbers the surviving vertices to
    /// 0..n'-1 in ascending old order (the same renumbering
    /// `induced_subgraph` applies to the kept set).
    pub fn delete_vertices(&self, remove: &VertexSet) -> Result<RootedLayout> {
        let keep = remove.complement();
        if keep.is_empty() {
            return Err(Error::precondition(
                "cannot delete every vertex of a layout".to_string(),
            ));
        }
        let mut new_id = vec![u32::MAX; self.n];
        for (idx, v) in keep.iter().enumerate() {
            new_id[v as usize] = idx as u32;
        }
        let pruned = self
            .prune(self.root(), &new_id)
            .expect("kept set is nonempty");
        RootedLayout::from_tree(&pruned, keep.len())
    }

    fn prune(&self, id: usize, new_id: &[u32]) -> Option<LayoutTree> {
        match self.nodes[id] {
            LayoutNode::Leaf(v) => {
                let nv = new_id[v as usize];
                (nv != u32::MAX).then_some(LayoutTree::Leaf(nv))
            }
            LayoutNode::Internal { left, right } => {
                match (self.prune(left, new_id), self.prune(right, new_id)) {
                    (Some(l), Some(r)) => Some(LayoutTree::node(l, r)),
                    (Some(l), None) => Some(l),
                    (None, Some(r)) => Some(r),
                    (None, None) => None,
                }
            }
        }
    }
}

/// A vertex order standing for the caterpillar layout that reads its
/// leaves left to right. Orders may use arbitrary distinct vertex ids so
/// that layouts for disjoint pieces can be built independently and then
/// concatenated; converting to a [`RootedLayout`] pins the universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearLayout {
    order: Vec<u32>,
}

impl LinearLayout {
    /// Wraps a vertex order; ids must be distinct.
    pub fn new(order: Vec<u32>) -> Result<LinearLayout> {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::parse("vertex order repeats a vertex".to_string()));
        }
        Ok(LinearLayout { order })
    }

    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// The canonical caterpillar over this order: a left-deep spine
    /// whose cuts are exactly the prefixes of the order plus singletons.
    pub fn to_rooted(&self, n: usize) -> Result<RootedLayout> {
        let mut it = self.order.iter();
        let first = it
            .next()
            .ok_or_else(|| Error::parse("cannot root an empty vertex order".to_string()))?;
        let mut tree = LayoutTree::Leaf(*first);
        for &v in it {
            tree = LayoutTree::node(tree, LayoutTree::Leaf(v));
        }
        RootedLayout::from_tree(&tree, n)
    }

    /// Joins two orders over disjoint vertex sets. The result's cut
    /// family is the family produced by inserting join nodes into
    /// endpoint-incident spine edges of both caterpillars: all prefixes
    /// of the combined order plus singletons.
    pub fn concatenate(&self, other: &LinearLayout) -> Result<LinearLayout> {
        let mine: std::collections::HashSet<u32> = self.order.iter().copied().collect();
        if other.order.iter().any(|v| mine.contains(v)) {
            return Err(Error::parse(
                "cannot concatenate layouts with overlapping vertex sets".to_string(),
            ));
        }
        let mut order = self.order.clone();
        order.extend_from_slice(&other.order);
        Ok(LinearLayout { order })
    }

    /// Adds a constant offset to every vertex id.
    pub fn shift(&self, offset: u32) -> LinearLayout {
        LinearLayout {
            order: self.order.iter().map(|v| v + offset).collect(),
        }
    }
}

/// Builds the canonical caterpillar layout of a permutation of 0..n-1.
pub fn layout_from_order(order: &[u32]) -> Result<LinearLayout> {
    let n = order.len();
    let mut seen = vec![false; n];
    for &v in order {
        if v as usize >= n || seen[v as usize] {
            return Err(Error::parse(format!(
                "order of length {} is not a permutation of 0..{}",
                n, n
            )));
        }
        seen[v as usize] = true;
    }
    LinearLayout::new(order.to_vec())
}

/// Joins two layouts over the same universe under a new root. The leaf
/// sets must be disjoint.
pub fn graft(a: &RootedLayout, b: &RootedLayout) -> Result<RootedLayout> {
    if a.n() != b.n() {
        return Err(Error::parse(
            "cannot graft layouts over different vertex universes".to_string(),
        ));
    }
    if a.covered().intersects(b.covered()) {
        return Err(Error::parse(
            "cannot graft layouts with overlapping vertex sets".to_string(),
        ));
    }
    RootedLayout::from_tree(&LayoutTree::node(a.to_tree(), b.to_tree()), a.n())
}

/// Outcome of a width validation run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidthReport {
    /// True when every cut respects the bound.
    pub ok: bool,
    /// The bound that was checked.
    pub bound: usize,
    /// Number of tree edges (non-root nodes) whose cuts were checked.
    pub cuts_checked: usize,
    /// Nodes whose cut exceeds the bound, ascending.
    pub failures: Vec<usize>,
}

impl WidthReport {
    /// Smallest failing node id, if any.
    pub fn first_violation(&self) -> Option<usize> {
        self.failures.first().copied()
    }
}

/// Checks that every cut of the layout has induced-matching size at most
/// `w`. The bound w = 1 is decided by the chain-cut characterization on
/// every cut; w >= 2 runs the exact budgeted cut search and reports a
/// size error when a cut exhausts its budget.
pub fn validate_width(g: &Graph, layout: &RootedLayout, w: usize) -> Result<WidthReport> {
    if layout.n() != g.n() {
        return Err(Error::parse(format!(
            "layout over {} vertices does not match graph with {}",
            layout.n(),
            g.n()
        )));
    }
    if !layout.is_total() {
        return Err(Error::parse(
            "layout leaves do not cover every graph vertex".to_string(),
        ));
    }
    let root = layout.root();
    let node_ids: Vec<usize> = (0..layout.node_count()).filter(|&t| t != root).collect();
    let verdicts: Vec<Result<bool>> = maybe_par_map(&node_ids, |&t| {
        let cut = layout.set(t);
        match w {
            0 => Ok(cut.iter().all(|v| !g.row(v).intersects(&cut.complement()))),
            1 => Ok(is_chain_cut(g, cut)),
            _ => Ok(!cut_mim_exceeds(g, cut, w, CUT_SEARCH_BUDGET)?),
        }
    });
    let mut failures = Vec::new();
    for (idx, verdict) in verdicts.into_iter().enumerate() {
        if !verdict? {
            failures.push(node_ids[idx]);
        }
    }
    failures.sort_unstable();
    Ok(WidthReport {
        ok: failures.is_empty(),
        bound: w,
        cuts_checked: node_ids.len(),
        failures,
    })
}

/// Validates that a width-1 layout for `g` is also a width-1 layout for
/// the complement of `g`. The input layout must already validate at
/// width 1 for `g`.
pub fn complement_reuse_check(g: &Graph, layout: &RootedLayout) -> Result<bool> {
    let own = validate_width(g, layout, 1)?;
    if !own.ok {
        return Err(Error::precondition(
            "complement reuse check requires a width-1 layout of the input graph".to_string(),
        ));
    }
    Ok(validate_width(&g.complement(), layout, 1)?.ok)
}
