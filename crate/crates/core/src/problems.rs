//! The problem catalog: which part trackers, which effective graph, and
//! which root filters realize each supported target property, plus the
//! certification dispatch that checks solver output against the original
//! input graph.

use crate::bitset::VertexSet;
use crate::certify;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A supported maximum induced subgraph problem.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ProblemKind {
    Cluster,
    Clique,
    Polar,
    Split,
    P3barFree,
    K3barFree,
    Bipartite,
}

impl ProblemKind {
    /// Every supported kind.
    pub const ALL: [ProblemKind; 7] = [
        ProblemKind::Cluster,
        ProblemKind::Clique,
        ProblemKind::Polar,
        ProblemKind::Split,
        ProblemKind::P3barFree,
        ProblemKind::K3barFree,
        ProblemKind::Bipartite,
    ];

    /// The six named problems of the core catalog; `Bipartite` is exposed
    /// additionally because its tracker plan falls out of the same
    /// machinery.
    pub const CATALOG: [ProblemKind; 6] = [
        ProblemKind::Cluster,
        ProblemKind::Clique,
        ProblemKind::Polar,
        ProblemKind::Split,
        ProblemKind::P3barFree,
        ProblemKind::K3barFree,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ProblemKind::Cluster => "cluster",
            ProblemKind::Clique => "clique",
            ProblemKind::Polar => "polar",
            ProblemKind::Split => "split",
            ProblemKind::P3barFree => "p3bar-free",
            ProblemKind::K3barFree => "k3bar-free",
            ProblemKind::Bipartite => "bipartite",
        }
    }

    pub fn parse(name: &str) -> Result<ProblemKind> {
        ProblemKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::parse(format!("unknown problem kind '{name}'")))
    }
}

impl std::fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// What one tracked part of a solution maintains at each cut.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PartTracker {
    /// The part induces a disjoint union of cliques in the effective graph.
    Cluster,
    /// The part induces a complete multipartite subgraph of the effective
    /// graph (a cluster of its complement).
    CoCluster,
    /// The part is independent in the effective graph.
    Independence,
}

/// One tracked part plus its root-side restriction.
#[derive(Clone, Copy, Debug)]
pub struct PartPlan {
    pub tracker: PartTracker,
    /// Restrict the final answer to solutions whose part has at most one
    /// component in the tracker's view (cluster becomes clique, cocluster
    /// becomes independent).
    pub single_component: bool,
}

/// Tracker recipe for one problem kind.
#[derive(Clone, Debug)]
pub struct Plan {
    pub kind: ProblemKind,
    pub parts: Vec<PartPlan>,
    /// Solve on the complement of the input graph. A width-1 layout works
    /// unchanged: chain cuts are closed under bipartite complement.
    pub complement: bool,
}

/// Tracker plan realizing a problem kind.
pub fn plan_for(kind: ProblemKind) -> Plan {
    let part = |tracker, single_component| PartPlan {
        tracker,
        single_component,
    };
    let (parts, complement) = match kind {
        ProblemKind::Cluster => (vec![part(PartTracker::Cluster, false)], false),
        ProblemKind::Clique => (vec![part(PartTracker::Cluster, true)], false),
        ProblemKind::Polar => (
            vec![
                part(PartTracker::Cluster, false),
                part(PartTracker::CoCluster, false),
            ],
            false,
        ),
        ProblemKind::Split => (
            vec![
                part(PartTracker::Cluster, true),
                part(PartTracker::CoCluster, true),
            ],
            false,
        ),
        // A set avoids an induced one-edge triple exactly when its
        // complement view is a cluster.
        ProblemKind::P3barFree => (vec![part(PartTracker::Cluster, false)], true),
        // A set avoids an independent triple exactly when its complement
        // view is triangle-free; on width-1 inputs that complement view is
        // perfect, so triangle-free coincides with two independent parts.
        ProblemKind::K3barFree => (
            vec![
                part(PartTracker::Independence, false),
                part(PartTracker::Independence, false),
            ],
            true,
        ),
        ProblemKind::Bipartite => (
            vec![
                part(PartTracker::Independence, false),
                part(PartTracker::Independence, false),
            ],
            false,
        ),
    };
    Plan {
        kind,
        parts,
        complement,
    }
}

/// Checks a witness partition against the original graph: the parts must be
/// disjoint, their union must satisfy the target property, and with
/// `connected` set the union must also be connected. This mirrors exactly
/// what the solver claims, using only the direct property checks.
pub fn certify_parts(
    g: &Graph,
    kind: ProblemKind,
    connected: bool,
    parts: &[VertexSet],
) -> Result<bool> {
    let expected = plan_for(kind).parts.len();
    if parts.len() != expected {
        return Err(Error::contract(format!(
            "{} expects {} witness parts, got {}",
            kind,
            expected,
            parts.len()
        )));
    }
    let mut union = VertexSet::new(g.n());
    let mut total = 0usize;
    for p in parts {
        union.union_with(p);
        total += p.len();
    }
    if union.len() != total {
        return Ok(false);
    }
    let ok = match kind {
        ProblemKind::Cluster => certify::check_cluster(g, &parts[0]),
        ProblemKind::Clique => certify::check_clique(g, &parts[0]),
        ProblemKind::Polar => certify::check_polar_parts(g, &parts[0], &parts[1]),
        ProblemKind::Split => certify::check_split_parts(g, &parts[0], &parts[1]),
        ProblemKind::P3barFree => certify::check_p3bar_free(g, &parts[0]),
        ProblemKind::K3barFree => certify::check_k3bar_free(g, &union),
        ProblemKind::Bipartite => {
            certify::check_independent(g, &parts[0]) && certify::check_independent(g, &parts[1])
        }
    };
    Ok(ok && (!connected || certify::check_connected(g, &union)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n as u32 - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for kind in ProblemKind::ALL {
            assert_eq!(ProblemKind::parse(kind.name()).unwrap(), kind);
        }
        assert!(ProblemKind::parse("chordal").is_err());
    }

    #[test]
    fn plans_have_expected_shapes() {
        assert_eq!(plan_for(ProblemKind::Cluster).parts.len(), 1);
        assert!(!plan_for(ProblemKind::Cluster).complement);
        assert!(plan_for(ProblemKind::Clique).parts[0].single_component);
        assert_eq!(plan_for(ProblemKind::Polar).parts.len(), 2);
        assert!(plan_for(ProblemKind::P3barFree).complement);
        assert!(plan_for(ProblemKind::K3barFree).complement);
        assert!(!plan_for(ProblemKind::Bipartite).complement);
    }

    #[test]
    fn certification_examples() {
        let p4 = path(4);
        let s = |vs: &[u32]| VertexSet::from_iter(4, vs.iter().copied());
        assert!(certify_parts(&p4, ProblemKind::Cluster, false, &[s(&[0, 1, 3])]).unwrap());
        assert!(!certify_parts(&p4, ProblemKind::Cluster, true, &[s(&[0, 1, 3])]).unwrap());
        assert!(certify_parts(&p4, ProblemKind::Split, false, &[s(&[1, 2]), s(&[0, 3])]).unwrap());
        // overlapping parts are rejected outright
        assert!(!certify_parts(&p4, ProblemKind::Split, false, &[s(&[1, 2]), s(&[1, 3])]).unwrap());
        // wrong part count is a contract error
        assert!(certify_parts(&p4, ProblemKind::Split, false, &[s(&[1, 2])]).is_err());
        assert!(certify_parts(&p4, ProblemKind::Bipartite, true, &[s(&[0, 2]), s(&[1, 3])]).unwrap());
    }
}
