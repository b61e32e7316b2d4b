//! Vertex-cover reduction instances with certified-width linear layouts.
//!
//! From a high-girth cover graph h and a gadget base, the builder emits
//! the complement of "many disjoint copies of h, decorated per vertex and
//! per edge with base gadgets", together with the linear layout whose
//! every cut stays within width 2 (plus whatever the base itself needs).
//! The sanity checker replays the underlying equivalence with brute-force
//! oracles on the factor components.

use mimsolve_core::error::{Error, Result};
use mimsolve_core::graph::components;
use mimsolve_core::problems::ProblemKind;
use mimsolve_core::{layout_from_order, Graph, LinearLayout, VertexSet};
use mimsolve_oracles::{
    join_values, max_induced, values_of, vertex_cover_number, MAX_SUBSET_VERTICES,
};

use crate::base::{ForbiddenBase, Preset};
use crate::sequences::girth;

/// One generated hardness instance: the graph, its width-certifiable
/// linear layout, and the numbers that translate cover budgets into
/// deletion thresholds.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub g: Graph,
    pub layout: LinearLayout,
    pub ell: usize,
    pub vc_n: usize,
}

impl Reduction {
    /// Deletion threshold paired with a cover budget of k.
    pub fn threshold(&self, k: usize) -> usize {
        k * self.ell * self.vc_n
    }
}

/// Builds the reduction instance for the cover graph `h`.
///
/// The decorated graph consists of ell * n copies of h; every copy vertex
/// receives a fresh copy of the base's outer part anchored at that vertex,
/// and every copy edge receives a fresh copy of the block anchored at its
/// two endpoints. The emitted graph is the complement, and the layout
/// lists the copy vertices first (index order) and then each gadget's
/// fresh vertices in attachment order, which keeps every cut's matching
/// width low: the copy section cannot host three independent cross
/// non-edges without a short cycle, and each gadget section is separated
/// by at most two anchors.
pub fn build_reduction(h: &Graph, base: &ForbiddenBase) -> Result<Reduction> {
    let n = h.n();
    if n < 2 {
        return Err(Error::precondition(
            "cover graph needs at least two vertices",
        ));
    }
    if h.m() == 0 {
        return Err(Error::precondition("cover graph needs at least one edge"));
    }
    if let Some(gi) = girth(h) {
        if gi < 7 {
            return Err(Error::precondition(format!(
                "cover graph girth {gi} is below the required 7"
            )));
        }
    }

    let copies = base.ell() * n;
    let star_n = copies * n;
    let mut star_edges: Vec<(u32, u32)> = Vec::with_capacity(copies * h.m());
    for c in 0..copies {
        let off = (c * n) as u32;
        for (a, b) in h.edges() {
            star_edges.push((off + a, off + b));
        }
    }

    let f = base.f();
    let fp = base.f_prime_vertices();
    let c1 = base.c1();
    let d = base.d();
    let f_edges = f.edges();
    let outer_new: Vec<u32> = fp.iter().filter(|&v| v != c1).collect();
    let block_new: Vec<u32> = base.f11().iter().filter(|&v| v != c1 && v != d).collect();

    let mut decorated_edges = star_edges.clone();
    let mut labels: Vec<String> = (0..copies)
        .flat_map(|c| (0..n).map(move |a| format!("c{c}v{a}")))
        .collect();
    let mut order: Vec<u32> = (0..star_n as u32).collect();
    let mut next = star_n as u32;
    let mut map = vec![u32::MAX; f.n()];

    for u in 0..star_n as u32 {
        map.fill(u32::MAX);
        map[c1 as usize] = u;
        for &x in &outer_new {
            map[x as usize] = next;
            labels.push(format!("u{u}f{x}"));
            order.push(next);
            next += 1;
        }
        for &(x, y) in &f_edges {
            if fp.contains(x) && fp.contains(y) {
                decorated_edges.push((map[x as usize], map[y as usize]));
            }
        }
    }

    for &(us, vs) in &star_edges {
        map.fill(u32::MAX);
        map[c1 as usize] = us;
        map[d as usize] = vs;
        for &x in &block_new {
            map[x as usize] = next;
            labels.push(format!("e{us}_{vs}f{x}"));
            order.push(next);
            next += 1;
        }
        for &(x, y) in &f_edges {
            let anchor_pair = (x == c1 && y == d) || (x == d && y == c1);
            if base.f11().contains(x) && base.f11().contains(y) && !anchor_pair {
                decorated_edges.push((map[x as usize], map[y as usize]));
            }
        }
    }

    let total = next as usize;
    let decorated = Graph::from_edges(total, decorated_edges)?;
    let mut g = decorated.complement();
    g.set_labels(labels)?;
    let layout = layout_from_order(&order)?;
    Ok(Reduction {
        g,
        layout,
        ell: base.ell(),
        vc_n: n,
    })
}

/// Largest clique (or cluster) by direct subset sweep, affordable a bit
/// beyond the general oracle cap because only two tables are needed.
fn max_cluster_like_small(g: &Graph, clique_only: bool) -> usize {
    let n = g.n();
    assert!(n <= 18, "direct sweep supports at most 18 vertices");
    let adj: Vec<u32> = (0..n as u32)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let size = 1usize << n;
    let mut clique = vec![false; size];
    let mut table = vec![false; size];
    clique[0] = true;
    table[0] = true;
    let mut best = 0;
    for m in 1..size {
        let v = m.trailing_zeros() as usize;
        let rest = m & !(1 << v);
        clique[m] = clique[rest] && (rest as u32 & !adj[v]) == 0;
        if clique_only {
            table[m] = clique[m];
        } else {
            let mask = m as u32;
            let mut comp = 1u32 << v;
            loop {
                let mut grown = comp;
                let mut bits = comp;
                while bits != 0 {
                    let u = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    grown |= adj[u] & mask;
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            table[m] = clique[comp as usize] && table[(mask & !comp) as usize];
        }
        if table[m] {
            best = best.max(m.count_ones() as usize);
        }
    }
    best
}

/// Replays the reduction equivalence with brute force: the cover graph
/// has a vertex cover within budget k exactly when the generated graph
/// has a deletion set within the mapped threshold.
///
/// The optimum over the generated graph is computed factor by factor:
/// the graph is the join of the complements of its own complement's
/// components, and the target values combine across joins by closed
/// formulas. Every factor must fit the subset oracle, and small totals
/// are additionally cross-checked by direct enumeration.
pub fn reduction_sanity(h: &Graph, preset: Preset, k: usize) -> Result<bool> {
    let n = h.n();
    if n >= 2 && k + 1 >= n {
        return Err(Error::precondition(format!(
            "cover budget {k} is not below {n} - 1, so the instance is trivial"
        )));
    }
    let base = preset.base();
    let red = build_reduction(h, &base)?;
    let g = &red.g;

    let decorated = g.complement();
    let comps = components(&decorated, &VertexSet::full(decorated.n()));
    let mut factor_values = Vec::with_capacity(comps.len());
    for comp in &comps {
        if comp.len() > MAX_SUBSET_VERTICES {
            return Err(Error::guard(format!(
                "factor with {} vertices exceeds the oracle cap of {}",
                comp.len(),
                MAX_SUBSET_VERTICES
            )));
        }
        let (sub, _) = decorated.induced_subgraph(comp);
        factor_values.push(values_of(&sub.complement())?);
    }
    let combined = join_values(&factor_values);
    let best = match preset.kind() {
        ProblemKind::Clique => combined.clique,
        ProblemKind::Cluster => combined.cluster,
        ProblemKind::Polar => combined.polar,
        other => {
            return Err(Error::contract(format!(
                "no reduction preset targets {other}"
            )))
        }
    };

    if g.n() <= MAX_SUBSET_VERTICES {
        let (direct, _) = max_induced(g, preset.kind(), false)?;
        assert_eq!(
            direct, best,
            "factor-combined optimum must match direct search"
        );
    } else if g.n() <= 18
        && matches!(preset.kind(), ProblemKind::Clique | ProblemKind::Cluster)
    {
        let direct = max_cluster_like_small(g, preset.kind() == ProblemKind::Clique);
        assert_eq!(
            direct, best,
            "factor-combined optimum must match the direct sweep"
        );
    }

    let deletion = g.n() - best;
    let cover = vertex_cover_number(h)?;
    Ok((cover <= k) == (deletion <= red.threshold(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use mimsolve_core::validate_width;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n as u32).map(|i| (i, (i + 1) % n as u32))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n as u32 - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn preconditions_reject_bad_cover_graphs() {
        let base = Preset::Clique.base();
        assert!(build_reduction(&cycle(5), &base).is_err());
        assert!(build_reduction(&cycle(6), &base).is_err());
        assert!(build_reduction(&Graph::new(3), &base).is_err());
        assert!(build_reduction(&Graph::new(1), &base).is_err());
        assert!(build_reduction(&cycle(7), &base).is_ok());
    }

    #[test]
    fn clique_preset_adds_no_gadget_vertices() {
        let red = build_reduction(&cycle(7), &Preset::Clique.base()).unwrap();
        assert_eq!(red.g.n(), 49);
        assert_eq!(red.layout.order(), (0..49).collect::<Vec<u32>>());
        assert_eq!(red.threshold(4), 28);
    }

    #[test]
    fn cluster_preset_doubles_the_copies() {
        let red = build_reduction(&path(3), &Preset::Cluster.base()).unwrap();
        assert_eq!(red.g.n(), 18);
        assert_eq!(red.threshold(1), 6);
    }

    #[test]
    fn polar_preset_counts_match_the_construction() {
        let red = build_reduction(&path(3), &Preset::Polar.base()).unwrap();
        // 6 copies of a 3-vertex path, each vertex gaining 2 gadget
        // vertices and each edge gaining 2 more
        assert_eq!(red.g.n(), 6 * (3 * 3 + 2 * 2));
        let c7 = build_reduction(&cycle(7), &Preset::Polar.base()).unwrap();
        assert_eq!(c7.g.n(), 14 * (3 * 7 + 2 * 7));
    }

    #[test]
    fn generated_layouts_validate_at_width_two() {
        for (h, preset) in [
            (cycle(7), Preset::Clique),
            (path(3), Preset::Cluster),
            (path(3), Preset::Polar),
        ] {
            let red = build_reduction(&h, &preset.base()).unwrap();
            let rooted = red.layout.to_rooted(red.g.n()).unwrap();
            let report = validate_width(&red.g, &rooted, 2).unwrap();
            assert!(report.ok, "{preset} layout must certify width 2");
        }
    }

    #[test]
    fn sanity_biconditional_on_the_seven_cycle() {
        // the seven-cycle needs four cover vertices
        assert!(reduction_sanity(&cycle(7), Preset::Clique, 3).unwrap());
        assert!(reduction_sanity(&cycle(7), Preset::Clique, 4).unwrap());
        assert!(reduction_sanity(&cycle(7), Preset::Cluster, 3).unwrap());
        assert!(reduction_sanity(&cycle(7), Preset::Cluster, 4).unwrap());
    }

    #[test]
    fn sanity_biconditional_on_paths() {
        for k in 0..2 {
            assert!(reduction_sanity(&path(3), Preset::Cluster, k).unwrap());
            assert!(reduction_sanity(&path(3), Preset::Polar, k).unwrap());
        }
        for k in 0..3 {
            assert!(reduction_sanity(&path(4), Preset::Clique, k).unwrap());
        }
    }

    #[test]
    fn single_edge_cover_graph_is_rejected() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        let err = reduction_sanity(&k2, Preset::Clique, 1).unwrap_err();
        assert!(err.to_string().contains("trivial"), "got: {err}");
        // the only budget below n - 1 still satisfies the biconditional
        assert!(reduction_sanity(&k2, Preset::Clique, 0).unwrap());
    }

    #[test]
    fn construction_is_deterministic() {
        let a = build_reduction(&cycle(7), &Preset::Polar.base()).unwrap();
        let b = build_reduction(&cycle(7), &Preset::Polar.base()).unwrap();
        assert_eq!(a.g.edges(), b.g.edges());
        assert_eq!(a.layout.order(), b.layout.order());
        assert_eq!(a.g.labels(), b.g.labels());
    }

    #[test]
    fn gadget_adjacency_matches_the_template() {
        let red = build_reduction(&path(3), &Preset::Polar.base()).unwrap();
        let decorated = red.g.complement();
        // vertex gadget of copy vertex 0: labels u0f4, u0f5
        let ls = red.g.labels().unwrap();
        let find = |s: &str| ls.iter().position(|l| l == s).unwrap() as u32;
        let (x, y) = (find("u0f4"), find("u0f5"));
        assert!(decorated.has_edge(0, x));
        assert!(decorated.has_edge(0, y));
        assert!(decorated.has_edge(x, y));
        // edge gadget of the first copy edge (0, 1): anchored on both ends,
        // no edge between the two fresh vertices
        let (p, q) = (find("e0_1f2"), find("e0_1f3"));
        assert!(decorated.has_edge(0, p));
        assert!(decorated.has_edge(0, q));
        assert!(decorated.has_edge(1, p));
        assert!(decorated.has_edge(1, q));
        assert!(!decorated.has_edge(p, q));
    }
}
