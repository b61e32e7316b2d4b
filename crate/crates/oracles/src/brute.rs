//! Exhaustive subset oracles over bitmask tables.
//!
//! Every property table is indexed by a subset mask of the vertices, so the
//! graphs are capped at [`MAX_SUBSET_VERTICES`]. The tables are the ground
//! truth the solver is validated against; they share no machinery with the
//! solver beyond the graph type.

use crate::MAX_SUBSET_VERTICES;
use mimsolve_core::error::{Error, Result};
use mimsolve_core::par::maybe_par_map;
use mimsolve_core::problems::ProblemKind;
use mimsolve_core::Graph;

/// All property tables of one graph, indexed by vertex subset mask.
pub struct SubsetTables {
    n: usize,
    clique: Vec<bool>,
    independent: Vec<bool>,
    cluster: Vec<bool>,
    cocluster: Vec<bool>,
    k3bar: Vec<bool>,
    bipartite: Vec<bool>,
    polar: Vec<bool>,
    split: Vec<bool>,
    connected: Vec<bool>,
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n() as u32)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

fn component_of(adj: &[u32], mask: u32, start: u32) -> u32 {
    let mut comp = 1u32 << start;
    loop {
        let mut grown = comp;
        let mut rest = comp;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            grown |= adj[v as usize] & mask;
        }
        if grown == comp {
            return comp;
        }
        comp = grown;
    }
}

impl SubsetTables {
    pub fn build(g: &Graph) -> Result<SubsetTables> {
        let n = g.n();
        if n > MAX_SUBSET_VERTICES {
            return Err(Error::guard(format!(
                "subset oracle supports at most {} vertices, got {}",
                MAX_SUBSET_VERTICES, n
            )));
        }
        let size = 1usize << n;
        let adj = adjacency_masks(g);
        let cadj: Vec<u32> = (0..n)
            .map(|v| !adj[v] & !(1 << v) & ((1u32 << n) - 1))
            .collect();

        let mut clique = vec![false; size];
        let mut independent = vec![false; size];
        let mut cluster = vec![false; size];
        let mut cocluster = vec![false; size];
        let mut k3bar = vec![false; size];
        let mut bipartite = vec![false; size];
        let mut connected = vec![false; size];
        for mask in 0..size as u32 {
            let m = mask as usize;
            if mask == 0 {
                clique[m] = true;
                independent[m] = true;
                cluster[m] = true;
                cocluster[m] = true;
                k3bar[m] = true;
                bipartite[m] = true;
                connected[m] = true;
                continue;
            }
            let v = mask.trailing_zeros() as usize;
            let rest = (mask & (mask - 1)) as usize;
            clique[m] = clique[rest] && (rest as u32 & !adj[v]) == 0;
            independent[m] = independent[rest] && (rest as u32 & adj[v]) == 0;
            let comp = component_of(&adj, mask, v as u32);
            cluster[m] = clique[comp as usize] && cluster[(mask & !comp) as usize];
            let ccomp = component_of(&cadj, mask, v as u32);
            cocluster[m] = independent[ccomp as usize] && cocluster[(mask & !ccomp) as usize];
            k3bar[m] = k3bar[rest] && clique[(rest as u32 & !adj[v]) as usize];
            connected[m] = comp == mask;
            bipartite[m] = {
                // 2-color components by alternating mask BFS
                let mut ok = true;
                let mut left = mask;
                while ok && left != 0 {
                    let s = left.trailing_zeros();
                    let mut colors = [1u32 << s, 0u32];
                    loop {
                        let next0 = colors
                            .iter()
                            .zip([1usize, 0usize])
                            .map(|(&c, side)| {
                                let mut reach = 0u32;
                                let mut r = c;
                                while r != 0 {
                                    let v = r.trailing_zeros();
                                    r &= r - 1;
                                    reach |= adj[v as usize] & mask;
                                }
                                (side, reach)
                            })
                            .fold([0u32; 2], |mut acc, (side, reach)| {
                                acc[side] |= reach;
                                acc
                            });
                        let grown = [colors[0] | next0[0], colors[1] | next0[1]];
                        if grown == colors {
                            break;
                        }
                        colors = grown;
                    }
                    if colors[0] & colors[1] != 0 {
                        ok = false;
                    }
                    left &= !(colors[0] | colors[1]);
                }
                ok
            };
        }

        // polar and split need a submask split per subset
        let mut polar = vec![false; size];
        let mut split = vec![false; size];
        for mask in 0..size as u32 {
            let m = mask as usize;
            let mut sub = mask;
            loop {
                let rest = (mask & !sub) as usize;
                if cluster[sub as usize] && cocluster[rest] {
                    polar[m] = true;
                }
                if clique[sub as usize] && independent[rest] {
                    split[m] = true;
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
        }

        Ok(SubsetTables {
            n,
            clique,
            independent,
            cluster,
            cocluster,
            k3bar,
            bipartite,
            polar,
            split,
            connected,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_connected(&self, mask: u32) -> bool {
        self.connected[mask as usize]
    }

    pub fn is_clique(&self, mask: u32) -> bool {
        self.clique[mask as usize]
    }

    pub fn is_independent(&self, mask: u32) -> bool {
        self.independent[mask as usize]
    }

    pub fn is_cluster(&self, mask: u32) -> bool {
        self.cluster[mask as usize]
    }

    pub fn is_cocluster(&self, mask: u32) -> bool {
        self.cocluster[mask as usize]
    }

    /// Does the subset satisfy the kind's property (connectivity aside)?
    pub fn satisfies(&self, kind: ProblemKind, mask: u32) -> bool {
        let m = mask as usize;
        match kind {
            ProblemKind::Cluster => self.cluster[m],
            ProblemKind::Clique => self.clique[m],
            ProblemKind::Polar => self.polar[m],
            ProblemKind::Split => self.split[m],
            // a set with no induced one-edge triple is exactly a complete
            // multipartite set
            ProblemKind::P3barFree => self.cocluster[m],
            ProblemKind::K3barFree => self.k3bar[m],
            ProblemKind::Bipartite => self.bipartite[m],
        }
    }
}

fn mask_vertices(mask: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros());
        m &= m - 1;
    }
    out
}

/// True when the ascending vertex list of `a` precedes that of `b`.
fn lex_list_less(a: u32, b: u32) -> bool {
    mask_vertices(a) < mask_vertices(b)
}

/// Exhaustive optimum of a maximum induced subgraph problem: the size and
/// the witness whose sorted vertex list is lexicographically smallest.
pub fn max_induced(g: &Graph, kind: ProblemKind, connected: bool) -> Result<(usize, Vec<u32>)> {
    let tables = SubsetTables::build(g)?;
    Ok(max_induced_with(&tables, kind, connected))
}

/// [`max_induced`] on prebuilt tables, for callers checking several kinds.
///
/// The subset range is partitioned across workers; the per-range optima
/// are folded in range order, so the winner (largest, then
/// lexicographically smallest vertex list) never depends on scheduling.
pub fn max_induced_with(
    tables: &SubsetTables,
    kind: ProblemKind,
    connected: bool,
) -> (usize, Vec<u32>) {
    const RANGE: u64 = 1 << 12;
    let total = 1u64 << tables.n;
    let ranges: Vec<(u32, u32)> = (0..total.div_ceil(RANGE))
        .map(|i| ((i * RANGE) as u32, (((i + 1) * RANGE).min(total)) as u32))
        .collect();
    let scan = |&(lo, hi): &(u32, u32)| -> (usize, u32) {
        let mut best_mask = 0u32;
        let mut best = 0usize;
        for mask in lo..hi {
            if connected && !tables.is_connected(mask) {
                continue;
            }
            if !tables.satisfies(kind, mask) {
                continue;
            }
            let size = mask.count_ones() as usize;
            if size > best || (size == best && lex_list_less(mask, best_mask)) {
                best = size;
                best_mask = mask;
            }
        }
        (best, best_mask)
    };
    let (best, best_mask) = maybe_par_map(&ranges, scan)
        .into_iter()
        .fold((0usize, 0u32), |(b, bm), (s, m)| {
            if s > b || (s == b && lex_list_less(m, bm)) {
                (s, m)
            } else {
                (b, bm)
            }
        });
    (best, mask_vertices(best_mask))
}

/// Fewest vertex deletions leaving a graph with the property: the
/// complement count of the exhaustive maximum.
pub fn min_deletion(g: &Graph, kind: ProblemKind) -> Result<usize> {
    let (best, _) = max_induced(g, kind, false)?;
    Ok(g.n() - best)
}

/// Exhaustive vertex cover number; graphs are capped at
/// [`crate::MAX_COVER_VERTICES`] vertices.
pub fn vertex_cover_number(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > crate::MAX_COVER_VERTICES {
        return Err(Error::guard(format!(
            "vertex cover oracle supports at most {} vertices, got {}",
            crate::MAX_COVER_VERTICES,
            n
        )));
    }
    let adj = adjacency_masks(g);
    let mut best = n;
    for cover in 0..(1u64 << n) as u32 {
        let holes = !cover;
        let ok = (0..n as u32)
            .filter(|&v| holes >> v & 1 == 1)
            .all(|v| adj[v as usize] & holes == 0);
        if ok {
            best = best.min(cover.count_ones() as usize);
        }
    }
    Ok(best)
}
