//! Bottom-up dynamic programming over a width-1 layout.
//!
//! Each layout node keeps a table of states. A state records, for every
//! tracked part, the representative of the part's intersection with the
//! vertices below the node, plus (optionally) a connectivity representative
//! of the whole intersection. Two states whose representatives have the same
//! presence pattern and whose slot vertices have pairwise equal cut rows
//! behave identically in every future merge, so states are collapsed by
//! (pattern, cut-row ranks) and only one representative vertex tuple with the
//! best value is kept per collapse key.
//!
//! An internal node merges the tables of its children pairwise: the
//! representative slots of matching parts are combined into an explicit list
//! of at most six vertices, the part property is decided on that list, and
//! the new representative is read off under the parent's own chain order.
//! The chain orders of the children are restrictions of the parent's, so
//! slot vertices keep their relative positions and the small-list
//! computation reproduces the representative of the full underlying union.

use crate::bitset::VertexSet;
use crate::chain_orders::{compute_chain_orders, verify_chain_orders, ChainOrders};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layout::{validate_width, LayoutNode, RootedLayout};
use crate::order::TotalOrder;
use crate::par::maybe_par_map;
use crate::problems::{certify_parts, plan_for, Plan, PartTracker, ProblemKind};
use crate::reps::{cluster_like_rep, connectivity_rep_of_list, NONE_VERTEX};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;
use std::time::Instant;

/// Largest number of simultaneously tracked parts over all problem kinds.
pub const MAX_PARTS: usize = 2;

const NONE_SLOT: [u32; 3] = [NONE_VERTEX; 3];

/// Concrete slot vertices of one state: per part the cluster-style slots
/// `[h1, t1, h2]` (independence trackers use only the first slot), plus the
/// connectivity pair `[first, last]` when connectivity is tracked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateVerts {
    pub parts: [[u32; 3]; MAX_PARTS],
    pub con: [u32; 2],
}

impl StateVerts {
    const EMPTY: StateVerts = StateVerts {
        parts: [NONE_SLOT; MAX_PARTS],
        con: [NONE_VERTEX; 2],
    };
}

/// Collapse key: per part the presence pattern and the cut-row ranks of the
/// slot vertices; equally for the connectivity pair. Absent entries are
/// `u32::MAX`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct StateKey {
    parts: [[u32; 4]; MAX_PARTS],
    con: [u32; 3],
}

const EMPTY_KEY: StateKey = StateKey {
    parts: [[u32::MAX; 4]; MAX_PARTS],
    con: [u32::MAX; 3],
};

/// Marker in `back.0` for leaf entries; `back.1` is then 0 for "exclude the
/// leaf vertex" or 1 + the part index for "include it in that part".
const LEAF_BACK: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
struct Entry {
    verts: StateVerts,
    value: u32,
    back: (u32, u32),
}

/// One solver state as exposed by [`solve_traced`].
#[derive(Clone, Copy, Debug)]
pub struct TracedState {
    pub verts: StateVerts,
    pub value: u32,
}

/// Counters reported with every solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveStats {
    /// Number of layout nodes processed.
    pub nodes: usize,
    /// Total number of states over all node tables.
    pub states: u64,
    /// Wall-clock time of the full pipeline in milliseconds.
    pub runtime_ms: u64,
}

/// A solved instance: the optimum, a witness, and its certification.
#[derive(Clone, Debug)]
pub struct SolveResult {
    pub problem: ProblemKind,
    pub connected: bool,
    /// Number of vertices in the optimal solution.
    pub size: usize,
    /// Witness vertices per tracked part, each sorted ascending.
    pub part_sets: Vec<Vec<u32>>,
    /// Union of the parts, sorted ascending.
    pub vertices: Vec<u32>,
    /// The witness was re-checked against the input graph with the direct
    /// property tests; solving fails instead of reporting `false` here.
    pub certified: bool,
    pub stats: SolveStats,
    /// Largest single node table encountered.
    pub max_node_states: usize,
}

struct NodeCtx {
    /// Lower chain order of the effective graph at this node.
    lower: TotalOrder,
    /// Order governing connectivity heads on the original graph: the lower
    /// order itself, or its reverse when solving on the complement.
    con_order: TotalOrder,
    /// Cut-row rank per vertex id; `u32::MAX` off the node's vertex set.
    rank_of: Vec<u32>,
    /// Number of distinct cut rows at this node.
    alphabet: u32,
}

struct Solver<'a> {
    g_orig: &'a Graph,
    g_eff: Graph,
    plan: Plan,
    connected: bool,
    layout: &'a RootedLayout,
    orders: ChainOrders,
}

impl<'a> Solver<'a> {
    fn node_ctx(&self, t: usize) -> NodeCtx {
        let n = self.g_eff.n();
        let outside = self.layout.set(t).complement();
        let lower = self.orders.lower[t].clone();
        let mut rank_of = vec![u32::MAX; n];
        let mut alphabet = 0u32;
        let mut prev: Option<VertexSet> = None;
        for v in lower.sequence() {
            let row = self.g_eff.row(v).intersection(&outside);
            match &prev {
                Some(p) if *p == row => {}
                _ => alphabet += 1,
            }
            rank_of[v as usize] = alphabet - 1;
            prev = Some(row);
        }
        let con_order = if self.plan.complement {
            lower.reversed()
        } else {
            lower.clone()
        };
        NodeCtx {
            lower,
            con_order,
            rank_of,
            alphabet,
        }
    }

    fn leaf_table(&self, v: u32) -> Vec<Entry> {
        let mut out = vec![Entry {
            verts: StateVerts::EMPTY,
            value: 0,
            back: (LEAF_BACK, 0),
        }];
        for (j, part) in self.plan.parts.iter().enumerate() {
            let mut verts = StateVerts::EMPTY;
            verts.parts[j] = match part.tracker {
                PartTracker::Cluster | PartTracker::CoCluster => [v, v, NONE_VERTEX],
                PartTracker::Independence => [v, NONE_VERTEX, NONE_VERTEX],
            };
            if self.connected {
                verts.con = [v, v];
            }
            out.push(Entry {
                verts,
                value: 1,
                back: (LEAF_BACK, j as u32 + 1),
            });
        }
        out
    }

    /// Combines one part's slots from both sides under the parent order;
    /// `None` marks an infeasible pair (the union would break the part's
    /// property).
    fn merge_part(
        &self,
        tracker: PartTracker,
        a: &[u32; 3],
        b: &[u32; 3],
        lower: &TotalOrder,
    ) -> Option<[u32; 3]> {
        match tracker {
            PartTracker::Cluster | PartTracker::CoCluster => {
                let mut verts: SmallVec<[u32; 6]> = SmallVec::new();
                for &v in a.iter().chain(b.iter()) {
                    if v != NONE_VERTEX && !verts.contains(&v) {
                        verts.push(v);
                    }
                }
                let reversed = tracker == PartTracker::CoCluster;
                let g = &self.g_eff;
                let rep = if reversed {
                    cluster_like_rep(&verts, &mut |u, v| !g.has_edge(u, v), lower, true)?
                } else {
                    cluster_like_rep(&verts, &mut |u, v| g.has_edge(u, v), lower, false)?
                };
                Some([rep.h1, rep.t1, rep.h2])
            }
            PartTracker::Independence => {
                let (ha, hb) = (a[0], b[0]);
                if ha == NONE_VERTEX {
                    return Some(*b);
                }
                if hb == NONE_VERTEX {
                    return Some(*a);
                }
                if self.g_eff.has_edge(ha, hb) {
                    return None;
                }
                let head = if lower.less(ha, hb) { hb } else { ha };
                Some([head, NONE_VERTEX, NONE_VERTEX])
            }
        }
    }

    fn merge_pair(&self, ctx: &NodeCtx, ea: &StateVerts, eb: &StateVerts) -> Option<StateVerts> {
        let mut out = StateVerts::EMPTY;
        for (j, part) in self.plan.parts.iter().enumerate() {
            out.parts[j] = self.merge_part(part.tracker, &ea.parts[j], &eb.parts[j], &ctx.lower)?;
        }
        if self.connected {
            let mut heads: SmallVec<[u32; 4]> = SmallVec::new();
            for &v in ea.con.iter().chain(eb.con.iter()) {
                if v != NONE_VERTEX && !heads.contains(&v) {
                    heads.push(v);
                }
            }
            if !heads.is_empty() {
                let rep = connectivity_rep_of_list(self.g_orig, &heads, &ctx.con_order)
                    .expect("connectivity heads lie below the node");
                out.con = [rep.first, rep.last];
            }
        }
        Some(out)
    }

    fn key_of(&self, ctx: &NodeCtx, verts: &StateVerts) -> StateKey {
        let rk = |v: u32| {
            if v == NONE_VERTEX {
                u32::MAX
            } else {
                ctx.rank_of[v as usize]
            }
        };
        let mut key = EMPTY_KEY;
        for j in 0..self.plan.parts.len() {
            let [h1, t1, h2] = verts.parts[j];
            let arity = if h1 == NONE_VERTEX {
                0
            } else if t1 == NONE_VERTEX || h1 == t1 {
                1
            } else {
                2
            };
            key.parts[j] = [arity, rk(h1), rk(t1), rk(h2)];
        }
        if self.connected {
            let [f, l] = verts.con;
            let arity = if f == NONE_VERTEX {
                0
            } else if f == l {
                1
            } else {
                2
            };
            key.con = [arity, rk(f), rk(l)];
        }
        key
    }

    /// Pairwise merge of two child tables with collapse-key deduplication.
    /// Pairs are scanned in (left index, right index) lexicographic order;
    /// the first pair achieving a key's best value supplies its stored
    /// representative, independent of chunking and thread count.
    fn merge_tables(&self, ctx: &NodeCtx, a: &[Entry], b: &[Entry]) -> Vec<Entry> {
        const CHUNK: usize = 128;
        let ranges: Vec<(usize, usize)> = (0..a.len())
            .step_by(CHUNK)
            .map(|s| (s, (s + CHUNK).min(a.len())))
            .collect();
        let locals: Vec<Vec<(StateKey, Entry)>> = maybe_par_map(&ranges, |&(s, e)| {
            let mut index: FxHashMap<StateKey, usize> = FxHashMap::default();
            let mut found: Vec<(StateKey, Entry)> = Vec::new();
            for (ia, entry_a) in a.iter().enumerate().take(e).skip(s) {
                for (ib, entry_b) in b.iter().enumerate() {
                    let Some(verts) = self.merge_pair(ctx, &entry_a.verts, &entry_b.verts) else {
                        continue;
                    };
                    let value = entry_a.value + entry_b.value;
                    let key = self.key_of(ctx, &verts);
                    let entry = Entry {
                        verts,
                        value,
                        back: (ia as u32, ib as u32),
                    };
                    match index.entry(key) {
                        std::collections::hash_map::Entry::Occupied(o) => {
                            let slot = &mut found[*o.get()].1;
                            if value > slot.value {
                                *slot = entry;
                            }
                        }
                        std::collections::hash_map::Entry::Vacant(vac) => {
                            vac.insert(found.len());
                            found.push((key, entry));
                        }
                    }
                }
            }
            found
        });
        let mut index: FxHashMap<StateKey, usize> = FxHashMap::default();
        let mut out: Vec<Entry> = Vec::new();
        for local in locals {
            for (key, entry) in local {
                match index.entry(key) {
                    std::collections::hash_map::Entry::Occupied(o) => {
                        let i = *o.get();
                        if entry.value > out[i].value {
                            out[i] = entry;
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(vac) => {
                        vac.insert(out.len());
                        out.push(entry);
                    }
                }
            }
        }
        out.shrink_to_fit();
        // Collapse keys bound the table by the key space of the cut-row
        // alphabet; a larger table means the collapse is broken.
        let alpha = ctx.alphabet as u128;
        let mut cap: u128 = 1;
        for part in &self.plan.parts {
            cap = cap.saturating_mul(match part.tracker {
                PartTracker::Cluster | PartTracker::CoCluster => {
                    (1 + alpha + alpha * alpha) * (1 + alpha)
                }
                PartTracker::Independence => 1 + alpha,
            });
        }
        if self.connected {
            cap = cap.saturating_mul(1 + alpha + alpha * alpha);
        }
        assert!(
            out.len() as u128 <= cap,
            "node table holds {} states, above the collapse bound {}",
            out.len(),
            cap
        );
        out
    }

    fn passes_root_filters(&self, verts: &StateVerts) -> bool {
        for (j, part) in self.plan.parts.iter().enumerate() {
            if part.single_component && verts.parts[j][2] != NONE_VERTEX {
                return false;
            }
        }
        if self.connected && verts.con[0] != verts.con[1] {
            return false;
        }
        true
    }

    fn traceback(&self, tables: &[Vec<Entry>], root_idx: usize) -> Vec<VertexSet> {
        let n = self.g_orig.n();
        let mut parts = vec![VertexSet::new(n); self.plan.parts.len()];
        let mut stack = vec![(self.layout.root(), root_idx)];
        while let Some((t, idx)) = stack.pop() {
            let entry = &tables[t][idx];
            match self.layout.node(t) {
                LayoutNode::Leaf(v) => {
                    if entry.back.1 > 0 {
                        parts[entry.back.1 as usize - 1].insert(v);
                    }
                }
                LayoutNode::Internal { left, right } => {
                    stack.push((left, entry.back.0 as usize));
                    stack.push((right, entry.back.1 as usize));
                }
            }
        }
        parts
    }
}

fn solve_impl(
    g: &Graph,
    layout: &RootedLayout,
    kind: ProblemKind,
    connected: bool,
) -> Result<(SolveResult, Vec<Vec<Entry>>)> {
    let started = Instant::now();
    let width = validate_width(g, layout, 1)?;
    if !width.ok {
        let node = width.first_violation().expect("failing report lists a node");
        return Err(Error::width(format!(
            "cut at layout node {} has an induced matching of size 2, but the solver requires width 1",
            node
        )));
    }
    let plan = plan_for(kind);
    let g_eff = if plan.complement { g.complement() } else { g.clone() };
    let sigma0 = TotalOrder::identity(g.n());
    let orders = compute_chain_orders(&g_eff, layout, &sigma0)?;
    let report = verify_chain_orders(&g_eff, layout, &orders);
    if let Some(v) = report.violation {
        return Err(Error::invariant(format!(
            "chain order condition {} fails at node {}",
            v.condition, v.node
        )));
    }
    let solver = Solver {
        g_orig: g,
        g_eff,
        plan,
        connected,
        layout,
        orders,
    };
    let mut tables: Vec<Vec<Entry>> = Vec::with_capacity(layout.node_count());
    let mut states: u64 = 0;
    let mut max_node_states = 0usize;
    for t in 0..layout.node_count() {
        let table = match layout.node(t) {
            LayoutNode::Leaf(v) => solver.leaf_table(v),
            LayoutNode::Internal { left, right } => {
                let ctx = solver.node_ctx(t);
                solver.merge_tables(&ctx, &tables[left], &tables[right])
            }
        };
        states += table.len() as u64;
        max_node_states = max_node_states.max(table.len());
        tables.push(table);
    }
    let root_table = &tables[layout.root()];
    let mut best: Option<(usize, u32)> = None;
    for (i, entry) in root_table.iter().enumerate() {
        if !solver.passes_root_filters(&entry.verts) {
            continue;
        }
        if best.map_or(true, |(_, bv)| entry.value > bv) {
            best = Some((i, entry.value));
        }
    }
    let (root_idx, best_value) =
        best.expect("the all-exclude state always passes every root filter");
    let parts = solver.traceback(&tables, root_idx);
    if !certify_parts(g, kind, connected, &parts)? {
        return Err(Error::invariant(
            "solver witness failed certification against the input graph".to_string(),
        ));
    }
    let mut union = VertexSet::new(g.n());
    for p in &parts {
        union.union_with(p);
    }
    let vertices = union.to_vec();
    assert_eq!(
        vertices.len(),
        best_value as usize,
        "witness size disagrees with the table optimum"
    );
    let result = SolveResult {
        problem: kind,
        connected,
        size: best_value as usize,
        part_sets: parts.iter().map(|p| p.to_vec()).collect(),
        vertices,
        certified: true,
        stats: SolveStats {
            nodes: layout.node_count(),
            states,
            runtime_ms: started.elapsed().as_millis() as u64,
        },
        max_node_states,
    };
    Ok((result, tables))
}

/// Solves a maximum induced subgraph problem on a graph with a width-1
/// layout: validates the width, computes and verifies the chain orders,
/// runs the table merge, and certifies the reconstructed witness against
/// the input graph.
pub fn solve(
    g: &Graph,
    layout: &RootedLayout,
    kind: ProblemKind,
    connected: bool,
) -> Result<SolveResult> {
    solve_impl(g, layout, kind, connected).map(|(r, _)| r)
}

/// [`solve`] plus a per-node dump of all surviving states, for inspection
/// and for the table-semantics tests.
pub fn solve_traced(
    g: &Graph,
    layout: &RootedLayout,
    kind: ProblemKind,
    connected: bool,
) -> Result<(SolveResult, Vec<Vec<TracedState>>)> {
    let (result, tables) = solve_impl(g, layout, kind, connected)?;
    let traced = tables
        .into_iter()
        .map(|t| {
            t.into_iter()
                .map(|e| TracedState {
                    verts: e.verts,
                    value: e.value,
                })
                .collect()
        })
        .collect();
    Ok((result, traced))
}
