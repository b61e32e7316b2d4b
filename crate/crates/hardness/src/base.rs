//! Gadget bases for the vertex-cover reductions.
//!
//! A base bundles the forbidden graph F, its distinguished block F11 with
//! the anchor vertices c1 and d, and the copy multiplier. The three
//! presets cover the clique, cluster, and polar targets; custom bases can
//! be supplied through [`ForbiddenBase::new`].

use mimsolve_core::error::{Error, Result};
use mimsolve_core::graph::components;
use mimsolve_core::problems::ProblemKind;
use mimsolve_core::{Graph, VertexSet};

use crate::sequences::{alpha_sequence, cut_vertices};

/// Gadget data of one reduction: the graph F whose disjoint copies break
/// the target property, the block F11 anchored at the cut vertex c1 and
/// its neighbor d, and the copy multiplier ell.
#[derive(Clone, Debug)]
pub struct ForbiddenBase {
    f: Graph,
    f11: VertexSet,
    c1: u32,
    d: u32,
    ell: usize,
}

impl ForbiddenBase {
    pub fn new(f: Graph, f11: VertexSet, c1: u32, d: u32, ell: usize) -> Result<Self> {
        if ell < 1 {
            return Err(Error::contract("copy multiplier ell must be at least 1"));
        }
        if f11.universe() != f.n() {
            return Err(Error::contract("block set universe must match the graph"));
        }
        if !f11.contains(c1) || !f11.contains(d) {
            return Err(Error::contract("anchor vertices must lie in the block"));
        }
        if c1 == d || !f.has_edge(c1, d) {
            return Err(Error::contract(
                "anchor d must be a neighbor of c1 inside the block",
            ));
        }
        Ok(ForbiddenBase { f, f11, c1, d, ell })
    }

    /// Derives the block and anchors canonically from the graph alone:
    /// the component with the largest alpha sequence supplies the cut
    /// vertex realizing it, the block is that cut vertex's largest piece,
    /// and d is the smallest block neighbor of c1. Ties pick smaller
    /// vertex indices.
    pub fn from_graph(f: Graph, ell: usize) -> Result<Self> {
        let all = VertexSet::full(f.n());
        let comps = components(&f, &all);
        if comps.is_empty() {
            return Err(Error::precondition("base graph must be non-empty"));
        }
        let mut first: Option<(&VertexSet, crate::sequences::AlphaSequence)> = None;
        for comp in &comps {
            let alpha = alpha_sequence(&f, comp)?;
            if first.as_ref().map_or(true, |(_, best)| alpha > *best) {
                first = Some((comp, alpha));
            }
        }
        let (comp, alpha) = first.expect("at least one component");

        let cuts = cut_vertices(&f, comp);
        let (c1, block) = if cuts.is_empty() {
            // the whole component is one block; any vertex works
            let c1 = comp.first().expect("component is non-empty");
            (c1, comp.clone())
        } else {
            let mut found: Option<(u32, VertexSet)> = None;
            for &c in &cuts {
                let mut rest = comp.clone();
                rest.remove(c);
                let mut pieces = components(&f, &rest);
                pieces.sort_by_key(|p| (usize::MAX - p.len(), p.first()));
                if pieces[0].len() + 1 == alpha.entries()[0] {
                    let mut sizes: Vec<usize> = pieces.iter().map(|p| p.len() + 1).collect();
                    sizes.sort_unstable_by(|a, b| b.cmp(a));
                    if sizes == alpha.entries() {
                        let mut block = pieces[0].clone();
                        block.insert(c);
                        found = Some((c, block));
                        break;
                    }
                }
            }
            found.expect("some cut vertex realizes the minimal alpha sequence")
        };

        let d = block
            .iter()
            .find(|&v| v != c1 && f.has_edge(c1, v))
            .ok_or_else(|| {
                Error::contract("the block anchor has no neighbor inside its block")
            })?;
        ForbiddenBase::new(f, block, c1, d, ell)
    }

    pub fn f(&self) -> &Graph {
        &self.f
    }

    pub fn f11(&self) -> &VertexSet {
        &self.f11
    }

    pub fn c1(&self) -> u32 {
        self.c1
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Vertices surviving in F': everything outside the block, plus c1.
    pub fn f_prime_vertices(&self) -> VertexSet {
        let mut keep = self.f11.complement();
        keep.insert(self.c1);
        keep
    }
}

/// The three shipped reduction targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Clique,
    Cluster,
    Polar,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Clique, Preset::Cluster, Preset::Polar];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Clique => "clique",
            Preset::Cluster => "cluster",
            Preset::Polar => "polar",
        }
    }

    pub fn parse(name: &str) -> Result<Preset> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == name)
            .ok_or_else(|| Error::parse(format!("unknown hardness preset '{name}'")))
    }

    /// The target property whose deletion problem the instance encodes.
    pub fn kind(self) -> ProblemKind {
        match self {
            Preset::Clique => ProblemKind::Clique,
            Preset::Cluster => ProblemKind::Cluster,
            Preset::Polar => ProblemKind::Polar,
        }
    }

    pub fn base(self) -> ForbiddenBase {
        let (f, ell) = match self {
            // a single extra edge already breaks "complement of a clique"
            Preset::Clique => (Graph::from_edges(2, [(0, 1)]).unwrap(), 1),
            // one edge complements to a co-cluster, two disjoint edges do not
            Preset::Cluster => (Graph::from_edges(2, [(0, 1)]).unwrap(), 2),
            // hub 0 over the non-adjacent pair {2, 3} and the triangle {0, 4, 5}
            Preset::Polar => (
                Graph::from_edges(
                    6,
                    [
                        (0, 1),
                        (0, 2),
                        (0, 3),
                        (0, 4),
                        (0, 5),
                        (1, 2),
                        (1, 3),
                        (4, 5),
                    ],
                )
                .unwrap(),
                2,
            ),
        };
        ForbiddenBase::from_graph(f, ell).expect("preset bases are well-formed")
    }
}

impl std::fmt::Display for Preset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{beta_lex_less, beta_sequence, BetaSequence};
    use mimsolve_oracles::SubsetTables;

    fn beta_entries(b: &BetaSequence) -> Vec<Vec<usize>> {
        b.parts().iter().map(|a| a.entries().to_vec()).collect()
    }

    #[test]
    fn preset_shapes_are_derived_consistently() {
        let clique = Preset::Clique.base();
        assert_eq!(clique.ell(), 1);
        assert_eq!(clique.f11().to_vec(), vec![0, 1]);
        assert_eq!((clique.c1(), clique.d()), (0, 1));
        assert_eq!(clique.f_prime_vertices().to_vec(), vec![0]);

        let cluster = Preset::Cluster.base();
        assert_eq!(cluster.ell(), 2);
        assert_eq!(cluster.f11().to_vec(), vec![0, 1]);

        let polar = Preset::Polar.base();
        assert_eq!(polar.ell(), 2);
        assert_eq!(polar.f11().to_vec(), vec![0, 1, 2, 3]);
        assert_eq!((polar.c1(), polar.d()), (0, 1));
        assert_eq!(polar.f_prime_vertices().to_vec(), vec![0, 4, 5]);
    }

    #[test]
    fn polar_base_has_the_expected_beta() {
        let base = Preset::Polar.base();
        assert_eq!(beta_entries(&beta_sequence(base.f()).unwrap()), [[4, 3]]);
    }

    /// Membership of g in the complement property: the complement of g
    /// must satisfy the preset's target property.
    fn complement_property_holds(preset: Preset, g: &Graph) -> bool {
        let comp = g.complement();
        let tables = SubsetTables::build(&comp).unwrap();
        let full = (1u64 << comp.n()) as u32 - 1;
        tables.satisfies(preset.kind(), full)
    }

    #[test]
    fn ell_copies_break_the_complement_property_and_one_less_does_not() {
        for preset in Preset::ALL {
            let base = preset.base();
            let breaking = Graph::disjoint_copies(base.f(), base.ell());
            assert!(
                !complement_property_holds(preset, &breaking),
                "{preset}: ell copies must violate the complement property"
            );
            if base.ell() > 1 {
                let below = Graph::disjoint_copies(base.f(), base.ell() - 1);
                assert!(
                    complement_property_holds(preset, &below),
                    "{preset}: ell-1 copies must satisfy the complement property"
                );
            }
        }
    }

    #[test]
    fn removing_any_block_vertex_shrinks_beta() {
        for preset in Preset::ALL {
            let base = preset.base();
            let whole = beta_sequence(base.f()).unwrap();
            for v in base.f11().iter() {
                let mut keep = VertexSet::full(base.f().n());
                keep.remove(v);
                let (sub, _) = base.f().induced_subgraph(&keep);
                let shrunk = beta_sequence(&sub).unwrap();
                assert!(
                    beta_lex_less(&shrunk, &whole),
                    "{preset}: removing block vertex {v} must shrink beta"
                );
            }
        }
    }

    #[test]
    fn preset_names_round_trip() {
        for preset in Preset::ALL {
            assert_eq!(Preset::parse(preset.name()).unwrap(), preset);
        }
        assert!(Preset::parse("unknown").is_err());
    }

    #[test]
    fn custom_base_validation_rejects_bad_anchors() {
        let f = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let block = VertexSet::from_iter(3, [0, 1]);
        assert!(ForbiddenBase::new(f.clone(), block.clone(), 0, 2, 1).is_err());
        assert!(ForbiddenBase::new(f.clone(), block.clone(), 0, 0, 1).is_err());
        assert!(ForbiddenBase::new(f.clone(), block.clone(), 0, 1, 0).is_err());
        assert!(ForbiddenBase::new(f, block, 0, 1, 1).is_ok());
    }
}
