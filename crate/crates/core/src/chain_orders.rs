//! Chain orders for width-1 layouts.
//!
//! Every cut of a width-1 layout is a chain cut, so the cut neighborhoods of
//! the vertices on either side are totally ordered by inclusion. This module
//! computes, for every tree node, a lower order on the vertices below the
//! node and an upper order on the rest, both compatible with those inclusion
//! chains and consistent between parent and child nodes.
//!
//! The orders come from layered digraphs: a directed edge records a strict
//! cut-neighborhood containment, layers are peeled off by repeatedly removing
//! in-degree-zero vertices, and a fixed tie-break order decides the sequence
//! inside each layer. Layers are fixed up front and consumed in index order;
//! they are never recomputed while draining.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layout::RootedLayout;
use crate::order::TotalOrder;

/// Digraph over a subset of vertices with layer assignments from iterated
/// in-degree-zero peeling.
#[derive(Clone)]
pub struct LayeredDigraph {
    verts: VertexSet,
    rows: Vec<VertexSet>,
    layer: Vec<u32>,
    layer_count: u32,
}

const NO_LAYER: u32 = u32::MAX;

impl LayeredDigraph {
    fn new(n: usize, verts: VertexSet) -> Self {
        LayeredDigraph {
            verts,
            rows: vec![VertexSet::new(n); n],
            layer: vec![NO_LAYER; n],
            layer_count: 0,
        }
    }

    pub fn verts(&self) -> &VertexSet {
        &self.verts
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.rows[u as usize].contains(v)
    }

    pub fn layer(&self, v: u32) -> u32 {
        self.layer[v as usize]
    }

    pub fn layer_count(&self) -> u32 {
        self.layer_count
    }

    fn add_edge(&mut self, u: u32, v: u32) {
        self.rows[u as usize].insert(v);
    }

    fn inherit(&mut self, other: &LayeredDigraph) {
        for v in other.verts.iter() {
            self.rows[v as usize].union_with(&other.rows[v as usize]);
        }
    }

    /// Peel layers: layer i holds the vertices with no incoming edge from
    /// vertices not yet assigned to layers 0..i. A round with no removable
    /// vertex means the digraph has a directed cycle, which cannot happen
    /// when the layout really has width 1; it is reported as an invariant
    /// violation.
    pub(crate) fn assign_layers(&mut self) -> Result<()> {
        let n = self.rows.len();
        let mut remaining = self.verts.clone();
        let mut index = 0u32;
        while !remaining.is_empty() {
            let mut incoming = VertexSet::new(n);
            for u in remaining.iter() {
                incoming.union_with(&self.rows[u as usize]);
            }
            incoming.intersect_with(&remaining);
            let mut zero = remaining.clone();
            zero.difference_with(&incoming);
            if zero.is_empty() {
                return Err(Error::invariant(
                    "chain-order digraph has a directed cycle; the layout does not have width 1",
                ));
            }
            for v in zero.iter() {
                self.layer[v as usize] = index;
            }
            remaining.difference_with(&zero);
            index += 1;
        }
        self.layer_count = index;
        Ok(())
    }
}

/// Read the total order out of a layered digraph: layers in index order, each
/// layer drained in ascending tie-break rank. Equivalently: repeatedly remove
/// the tie-break-smallest vertex of the first nonempty layer, with the layers
/// fixed up front.
pub fn extract_order(d: &LayeredDigraph, tie: &TotalOrder) -> Result<TotalOrder> {
    let n = d.rows.len();
    let mut members = d.verts.to_vec();
    for &v in &members {
        if !tie.covers(v) {
            return Err(Error::contract(format!(
                "tie-break order does not cover vertex {}",
                v
            )));
        }
    }
    members.sort_by_key(|&v| (d.layer(v), tie.rank(v)));
    Ok(TotalOrder::from_sequence(n, &members))
}

/// Lower and upper chain orders per tree node.
pub struct ChainOrders {
    /// Order on the vertices below each node.
    pub lower: Vec<TotalOrder>,
    /// Order on the vertices outside each node (empty at the root).
    pub upper: Vec<TotalOrder>,
}

fn strict_containment_edges(g: &Graph, d: &mut LayeredDigraph, within: &VertexSet, cut_side: &VertexSet) {
    let members = within.to_vec();
    let rows: Vec<VertexSet> = members
        .iter()
        .map(|&v| g.row(v).intersection(cut_side))
        .collect();
    for (i, &v) in members.iter().enumerate() {
        for (j, &w) in members.iter().enumerate() {
            if i == j {
                continue;
            }
            if rows[i].len() < rows[j].len() && rows[i].is_subset_of(&rows[j]) {
                d.add_edge(v, w);
            }
        }
    }
}

/// Compute lower and upper chain orders for every node of a width-1 layout.
///
/// `sigma0` is the tie-break for the lower orders (the vertex-index order by
/// default); the upper orders use the root's lower order as tie-break. The
/// caller is expected to have validated the layout at width 1; if it does not
/// have width 1 the digraphs can contain cycles, reported as invariant
/// violations.
pub fn compute_chain_orders(
    g: &Graph,
    layout: &RootedLayout,
    sigma0: &TotalOrder,
) -> Result<ChainOrders> {
    let n = g.n();
    if layout.n() != n {
        return Err(Error::parse(format!(
            "layout is over {} vertices but the graph has {}",
            layout.n(),
            n
        )));
    }
    if !layout.is_total() {
        return Err(Error::parse("layout does not cover every vertex"));
    }
    for v in 0..n as u32 {
        if !sigma0.covers(v) {
            return Err(Error::contract(format!(
                "base tie-break order does not cover vertex {}",
                v
            )));
        }
    }

    let count = layout.node_count();
    let mut lower_d: Vec<LayeredDigraph> = Vec::with_capacity(count);
    let mut lower: Vec<TotalOrder> = Vec::with_capacity(count);
    for t in 0..count {
        let vt = layout.set(t);
        let mut d = LayeredDigraph::new(n, vt.clone());
        if let Some((a, b)) = layout.children(t) {
            d.inherit(&lower_d[a]);
            d.inherit(&lower_d[b]);
            let cut_side = vt.complement();
            strict_containment_edges(g, &mut d, vt, &cut_side);
        }
        d.assign_layers()?;
        lower.push(extract_order(&d, sigma0)?);
        lower_d.push(d);
    }

    let root = layout.root();
    let chi_r = lower[root].clone();
    let mut upper_d: Vec<Option<LayeredDigraph>> = (0..count).map(|_| None).collect();
    let mut upper: Vec<TotalOrder> = vec![TotalOrder::from_sequence(n, &[]); count];
    let mut empty_root = LayeredDigraph::new(n, VertexSet::new(n));
    empty_root.assign_layers()?;
    upper[root] = extract_order(&empty_root, &chi_r)?;
    upper_d[root] = Some(empty_root);
    // Nodes are stored in postorder, so walking ids downward visits every
    // parent before its children.
    for t in (0..count).rev() {
        if let Some((a, b)) = layout.children(t) {
            let parent_d = upper_d[t].as_ref().unwrap().clone();
            for c in [a, b] {
                let vc = layout.set(c);
                let outside = vc.complement();
                let mut d = LayeredDigraph::new(n, outside.clone());
                d.inherit(&parent_d);
                strict_containment_edges(g, &mut d, &outside, vc);
                d.assign_layers()?;
                upper[c] = extract_order(&d, &chi_r)?;
                upper_d[c] = Some(d);
            }
        }
    }

    Ok(ChainOrders { lower, upper })
}

/// First violated chain-order condition, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainOrderViolation {
    /// Name of the violated condition.
    pub condition: &'static str,
    /// Tree node at which it was detected.
    pub node: usize,
}

/// Outcome of [`verify_chain_orders`].
#[derive(Debug, Clone)]
pub struct ChainOrderReport {
    pub ok: bool,
    pub violation: Option<ChainOrderViolation>,
}

fn fail(condition: &'static str, node: usize) -> ChainOrderReport {
    ChainOrderReport {
        ok: false,
        violation: Some(ChainOrderViolation { condition, node }),
    }
}

fn is_chain_sequence(g: &Graph, seq: &[u32], cut_side: &VertexSet) -> bool {
    for w in seq.windows(2) {
        let a = g.row(w[0]).intersection(cut_side);
        let b = g.row(w[1]).intersection(cut_side);
        if !a.is_subset_of(&b) {
            return false;
        }
    }
    true
}

fn restriction(seq: &[u32], keep: &VertexSet) -> Vec<u32> {
    seq.iter().copied().filter(|&v| keep.contains(v)).collect()
}

/// Check the five chain-order conditions literally against a graph and
/// layout: each lower order is a chain order of its node's vertex set; each
/// child's lower order is the restriction of its parent's; each upper order
/// is a chain order of the outside set; each child's upper order restricts to
/// its parent's upper order; and each node's upper order agrees with its
/// parent's lower order on the sibling's vertices. Domains are checked first.
/// The report carries the first violation in a fixed scan order.
pub fn verify_chain_orders(
    g: &Graph,
    layout: &RootedLayout,
    orders: &ChainOrders,
) -> ChainOrderReport {
    let count = layout.node_count();
    if orders.lower.len() != count || orders.upper.len() != count {
        return fail("domain", 0);
    }
    let n = g.n();
    for t in 0..count {
        let vt = layout.set(t);
        let outside = vt.complement();
        let lower_seq = orders.lower[t].sequence();
        let upper_seq = orders.upper[t].sequence();
        if lower_seq.len() != vt.len() || lower_seq.iter().any(|&v| !vt.contains(v)) {
            return fail("domain", t);
        }
        if upper_seq.len() != outside.len() || upper_seq.iter().any(|&v| !outside.contains(v)) {
            return fail("domain", t);
        }
        if !is_chain_sequence(g, &lower_seq, &outside) {
            return fail("lower-chain", t);
        }
        if !is_chain_sequence(g, &upper_seq, vt) {
            return fail("upper-chain", t);
        }
    }
    let _ = n;
    for t in 0..count {
        if let Some((a, b)) = layout.children(t) {
            let lower_seq = orders.lower[t].sequence();
            for c in [a, b] {
                if restriction(&lower_seq, layout.set(c)) != orders.lower[c].sequence() {
                    return fail("lower-restriction", c);
                }
            }
            let upper_parent = orders.upper[t].sequence();
            for (c, s) in [(a, b), (b, a)] {
                let outside_parent = layout.set(t).complement();
                let child_upper = orders.upper[c].sequence();
                if restriction(&child_upper, &outside_parent) != upper_parent {
                    return fail("upper-restriction", c);
                }
                let sibling = layout.set(s);
                if restriction(&child_upper, sibling) != restriction(&lower_seq, sibling) {
                    return fail("upper-sibling-lower", c);
                }
            }
        }
    }
    ChainOrderReport { ok: true, violation: None }
}

/// Serialize chain orders in the dump format consumed by the verifier: two
/// lines per node, `node <id> lower: <vertices>` and `node <id> upper: ...`,
/// vertices printed as graph labels in order. A comment records the
/// tie-break base.
pub fn write_chain_orders(g: &Graph, layout: &RootedLayout, orders: &ChainOrders) -> String {
    let mut out = String::from("# base: vertex-index\n");
    for t in 0..layout.node_count() {
        for (kind, ord) in [("lower", &orders.lower[t]), ("upper", &orders.upper[t])] {
            out.push_str(&format!("node {} {}:", t, kind));
            for v in ord.sequence() {
                out.push(' ');
                out.push_str(&g.label(v));
            }
            out.push('\n');
        }
    }
    out
}

/// Parse a chain-order dump produced by [`write_chain_orders`]. Every node
/// must have exactly one lower and one upper line; vertices resolve through
/// labels or 1-based indices. Order-condition checking is left to
/// [`verify_chain_orders`].
pub fn parse_chain_orders(text: &str, g: &Graph, layout: &RootedLayout) -> Result<ChainOrders> {
    let count = layout.node_count();
    let n = g.n();
    let mut lower: Vec<Option<TotalOrder>> = vec![None; count];
    let mut upper: Vec<Option<TotalOrder>> = vec![None; count];
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 3 || toks[0] != "node" {
            return Err(Error::parse(format!(
                "line {}: expected `node <id> lower:|upper: ...`",
                lineno + 1
            )));
        }
        let id: usize = toks[1]
            .parse()
            .map_err(|_| Error::parse(format!("line {}: bad node id {:?}", lineno + 1, toks[1])))?;
        if id >= count {
            return Err(Error::parse(format!(
                "line {}: node {} out of range 0..{}",
                lineno + 1,
                id,
                count
            )));
        }
        let slot = match toks[2] {
            "lower:" => &mut lower[id],
            "upper:" => &mut upper[id],
            other => {
                return Err(Error::parse(format!(
                    "line {}: expected `lower:` or `upper:`, found {:?}",
                    lineno + 1,
                    other
                )))
            }
        };
        if slot.is_some() {
            return Err(Error::parse(format!(
                "line {}: duplicate {} line for node {}",
                lineno + 1,
                toks[2],
                id
            )));
        }
        let mut seq = Vec::with_capacity(toks.len() - 3);
        for tok in &toks[3..] {
            let v = crate::io::resolve_vertex(g, tok)
                .map_err(|e| Error::parse(format!("line {}: {}", lineno + 1, e)))?;
            if seq.contains(&v) {
                return Err(Error::parse(format!(
                    "line {}: vertex {} repeated",
                    lineno + 1,
                    tok
                )));
            }
            seq.push(v);
        }
        *slot = Some(TotalOrder::from_sequence(n, &seq));
    }
    let mut lo = Vec::with_capacity(count);
    let mut up = Vec::with_capacity(count);
    for t in 0..count {
        lo.push(lower[t].take().ok_or_else(|| {
            Error::parse(format!("missing `node {} lower:` line", t))
        })?);
        up.push(upper[t].take().ok_or_else(|| {
            Error::parse(format!("missing `node {} upper:` line", t))
        })?);
    }
    Ok(ChainOrders { lower: lo, upper: up })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::io::parse_dimacs;
    use crate::layout::{layout_from_order, LayoutTree, RootedLayout};

    fn path3() -> (Graph, RootedLayout) {
        let g = parse_dimacs("p edge 3 2\nn 1 a\nn 2 b\nn 3 c\ne 1 2\ne 2 3\n").unwrap();
        let tree = LayoutTree::node(
            LayoutTree::node(LayoutTree::Leaf(0), LayoutTree::Leaf(1)),
            LayoutTree::Leaf(2),
        );
        let layout = RootedLayout::from_tree(&tree, 3).unwrap();
        (g, layout)
    }

    #[test]
    fn path3_orders_match_hand_computation() {
        let (g, layout) = path3();
        let sigma0 = TotalOrder::identity(3);
        let co = compute_chain_orders(&g, &layout, &sigma0).unwrap();
        // Node ids in postorder: 0 = leaf a, 1 = leaf b, 2 = {a,b}, 3 = leaf c, 4 = root.
        assert_eq!(co.lower[2].sequence(), vec![0, 1]);
        // Root digraph inherits a -> b; layers {a, c} then {b}.
        assert_eq!(co.lower[4].sequence(), vec![0, 2, 1]);
        assert_eq!(co.upper[4].sequence(), Vec::<u32>::new());
        // Outside of leaf a: c's cut row at {a} is empty, b's is {a}: c -> b...
        // c has no edge to a's cut, so c comes first.
        assert_eq!(co.upper[0].sequence(), vec![2, 1]);
        assert_eq!(co.upper[1].sequence(), vec![0, 2]);
        assert_eq!(co.upper[3].sequence(), vec![0, 1]);
        let report = verify_chain_orders(&g, &layout, &co);
        assert!(report.ok, "violation: {:?}", report.violation);
    }

    #[test]
    fn verify_accepts_computed_orders_on_caterpillars() {
        for (n, edges) in [
            (4usize, vec![(0u32, 1u32), (1, 2), (2, 3)]),
            (4, vec![(0, 2), (1, 2), (2, 3), (0, 3)]),
            (5, vec![(0, 1), (0, 2), (0, 3), (0, 4)]),
            (1, vec![]),
        ] {
            let g = Graph::from_edges(n, edges).unwrap();
            let layout = layout_from_order(&(0..n as u32).collect::<Vec<_>>())
                .unwrap()
                .to_rooted(n)
                .unwrap();
            let co = compute_chain_orders(&g, &layout, &TotalOrder::identity(n)).unwrap();
            let report = verify_chain_orders(&g, &layout, &co);
            assert!(report.ok, "n={} violation: {:?}", n, report.violation);
        }
    }

    #[test]
    fn tampered_orders_are_rejected() {
        let (g, layout) = path3();
        let sigma0 = TotalOrder::identity(3);
        let mut co = compute_chain_orders(&g, &layout, &sigma0).unwrap();
        // Swap a and b in the lower order of node 2: b's cut row {c} is a
        // strict superset of a's empty row, so b may not precede a.
        co.lower[2] = TotalOrder::from_sequence(3, &[1, 0]);
        let report = verify_chain_orders(&g, &layout, &co);
        assert!(!report.ok);
        let v = report.violation.unwrap();
        assert!(v.condition == "lower-chain" || v.condition == "lower-restriction");

        let mut co2 = compute_chain_orders(&g, &layout, &sigma0).unwrap();
        co2.upper[0] = TotalOrder::from_sequence(3, &[1, 2]);
        let report2 = verify_chain_orders(&g, &layout, &co2);
        assert!(!report2.ok);

        let mut co3 = compute_chain_orders(&g, &layout, &sigma0).unwrap();
        co3.lower[0] = TotalOrder::from_sequence(3, &[1]);
        assert_eq!(
            verify_chain_orders(&g, &layout, &co3).violation.unwrap().condition,
            "domain"
        );
    }

    #[test]
    fn cycle_in_digraph_is_an_invariant_error() {
        let mut d = LayeredDigraph::new(2, VertexSet::from_iter(2, [0u32, 1]));
        d.add_edge(0, 1);
        d.add_edge(1, 0);
        assert!(matches!(d.assign_layers(), Err(Error::Invariant(_))));
    }

    #[test]
    fn dump_round_trip() {
        let (g, layout) = path3();
        let co = compute_chain_orders(&g, &layout, &TotalOrder::identity(3)).unwrap();
        let text = write_chain_orders(&g, &layout, &co);
        assert!(text.contains("node 4 lower: a c b"));
        assert!(text.contains("node 4 upper:\n"));
        let parsed = parse_chain_orders(&text, &g, &layout).unwrap();
        for t in 0..layout.node_count() {
            assert_eq!(parsed.lower[t].sequence(), co.lower[t].sequence());
            assert_eq!(parsed.upper[t].sequence(), co.upper[t].sequence());
        }
        assert!(verify_chain_orders(&g, &layout, &parsed).ok);
        assert!(parse_chain_orders("node 0 lower: a\n", &g, &layout).is_err());
        assert!(parse_chain_orders(&format!("{}node 0 lower: a\n", text), &g, &layout).is_err());
    }

    #[test]
    fn extract_order_respects_layers_then_tiebreak() {
        let mut d = LayeredDigraph::new(4, VertexSet::from_iter(4, [0u32, 1, 2, 3]));
        d.add_edge(3, 1);
        d.assign_layers().unwrap();
        // Layers: {0, 2, 3} then {1}; reversed tie-break drains 3, 2, 0 first.
        let tie = TotalOrder::from_sequence(4, &[3, 2, 1, 0]);
        let ord = extract_order(&d, &tie).unwrap();
        assert_eq!(ord.sequence(), vec![3, 2, 0, 1]);
    }
}
