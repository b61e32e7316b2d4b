//! Graphs and width-1 layouts for interval graphs, permutation graphs,
//! and cographs.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layout::{layout_from_order, LayoutTree, LinearLayout, RootedLayout};

/// A closed interval on the line, given by its endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub left: f64,
    pub right: f64,
}

impl Interval {
    pub fn new(left: f64, right: f64) -> Result<Interval> {
        if !left.is_finite() || !right.is_finite() || left > right {
            return Err(Error::parse(format!(
                "invalid interval [{}, {}]",
                left, right
            )));
        }
        Ok(Interval { left, right })
    }

    fn intersects(&self, other: &Interval) -> bool {
        self.left <= other.right && other.left <= self.right
    }
}

/// The intersection graph of the intervals (vertex i = interval i).
pub fn interval_graph(intervals: &[Interval]) -> Graph {
    let n = intervals.len();
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if intervals[i].intersects(&intervals[j]) {
                g.add_edge(i as u32, j as u32)
                    .expect("indices in range, i < j");
            }
        }
    }
    g
}

/// The left-endpoint order of an interval model: vertices sorted by left
/// endpoint, ties by right endpoint, then index. The caterpillar over
/// this order has width at most 1 for the model's intersection graph.
pub fn interval_layout(intervals: &[Interval]) -> LinearLayout {
    let mut idx: Vec<u32> = (0..intervals.len() as u32).collect();
    idx.sort_by(|&a, &b| {
        let ia = &intervals[a as usize];
        let ib = &intervals[b as usize];
        ia.left
            .total_cmp(&ib.left)
            .then(ia.right.total_cmp(&ib.right))
            .then(a.cmp(&b))
    });
    layout_from_order(&idx).expect("sorted index vector is a permutation")
}

/// Validates that `perm` holds the images of 0..n-1 in some order.
fn check_permutation(perm: &[u32]) -> Result<()> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &v in perm {
        if v as usize >= n || seen[v as usize] {
            return Err(Error::parse(format!(
                "sequence of length {} is not a permutation of 0..{}",
                n, n
            )));
        }
        seen[v as usize] = true;
    }
    Ok(())
}

/// The permutation graph of `perm`: edge between i < j exactly when the
/// permutation inverts them (perm[i] > perm[j]).
pub fn permutation_graph(perm: &[u32]) -> Result<Graph> {
    check_permutation(perm)?;
    let n = perm.len();
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if perm[i] > perm[j] {
                g.add_edge(i as u32, j as u32)
                    .expect("indices in range, i < j");
            }
        }
    }
    Ok(g)
}

/// The identity-order caterpillar, a width-1 layout for the permutation
/// graph of `perm`.
pub fn permutation_layout(perm: &[u32]) -> Result<LinearLayout> {
    check_permutation(perm)?;
    layout_from_order(&(0..perm.len() as u32).collect::<Vec<_>>())
}

/// A cotree: leaves are vertices, internal nodes combine their children
/// by disjoint union or join. Internal nodes may have any number of
/// children of two or more; layout construction binarizes left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cotree {
    Leaf(u32),
    Union(Vec<Cotree>),
    Join(Vec<Cotree>),
}

impl Cotree {
    fn leaves(&self, out: &mut Vec<u32>) {
        match self {
            Cotree::Leaf(v) => out.push(*v),
            Cotree::Union(cs) | Cotree::Join(cs) => {
                for c in cs {
                    c.leaves(out);
                }
            }
        }
    }

    fn check(&self) -> Result<()> {
        match self {
            Cotree::Leaf(_) => Ok(()),
            Cotree::Union(cs) | Cotree::Join(cs) => {
                if cs.len() < 2 {
                    return Err(Error::parse(
                        "cotree internal node needs at least two children".to_string(),
                    ));
                }
                cs.iter().try_for_each(|c| c.check())
            }
        }
    }

    /// Left-to-right binarization of the tree shape.
    fn binarize(&self) -> LayoutTree {
        match self {
            Cotree::Leaf(v) => LayoutTree::Leaf(*v),
            Cotree::Union(cs) | Cotree::Join(cs) => {
                let mut it = cs.iter();
                let mut acc = it.next().expect("checked arity").binarize();
                for c in it {
                    acc = LayoutTree::node(acc, c.binarize());
                }
                acc
            }
        }
    }
}

fn cotree_vertex_count(cotree: &Cotree) -> Result<usize> {
    cotree.check()?;
    let mut leaves = Vec::new();
    cotree.leaves(&mut leaves);
    let n = leaves.len();
    let mut seen = vec![false; n];
    for &v in &leaves {
        if v as usize >= n || seen[v as usize] {
            return Err(Error::parse(
                "cotree leaves must cover 0..n-1 exactly once".to_string(),
            ));
        }
        seen[v as usize] = true;
    }
    Ok(n)
}

/// The cograph described by a cotree.
pub fn cotree_graph(cotree: &Cotree) -> Result<Graph> {
    let n = cotree_vertex_count(cotree)?;
    let mut g = Graph::new(n);
    fn build(t: &Cotree, g: &mut Graph) -> Vec<u32> {
        match t {
            Cotree::Leaf(v) => vec![*v],
            Cotree::Union(cs) | Cotree::Join(cs) => {
                let join = matches!(t, Cotree::Join(_));
                let parts: Vec<Vec<u32>> = cs.iter().map(|c| build(c, g)).collect();
                if join {
                    for i in 0..parts.len() {
                        for j in i + 1..parts.len() {
                            for &u in &parts[i] {
                                for &v in &parts[j] {
                                    g.add_edge(u, v).expect("leaf ids validated");
                                }
                            }
                        }
                    }
                }
                parts.into_iter().flatten().collect()
            }
        }
    }
    build(cotree, &mut g);
    Ok(g)
}

/// The binarized cotree shape as a rooted layout; every cut separates a
/// run of children of one cotree node, giving width at most 1 for the
/// cograph.
pub fn cotree_layout(cotree: &Cotree) -> Result<RootedLayout> {
    let n = cotree_vertex_count(cotree)?;
    RootedLayout::from_tree(&cotree.binarize(), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::validate_width;

    fn iv(l: f64, r: f64) -> Interval {
        Interval::new(l, r).unwrap()
    }

    #[test]
    fn interval_path() {
        let model = [iv(0.0, 2.0), iv(1.0, 3.0), iv(2.5, 4.0)];
        let g = interval_graph(&model);
        assert_eq!(g.m(), 2);
        assert!(g.has_edge(0, 1));
        assert!(g.has_edge(1, 2));
        let layout = interval_layout(&model).to_rooted(3).unwrap();
        assert!(validate_width(&g, &layout, 1).unwrap().ok);
    }

    #[test]
    fn nested_intervals_star() {
        let model = [iv(0.0, 10.0), iv(1.0, 2.0), iv(3.0, 4.0)];
        let g = interval_graph(&model);
        assert_eq!(g.m(), 2);
        assert!(g.has_edge(0, 1));
        assert!(g.has_edge(0, 2));
        let layout = interval_layout(&model).to_rooted(3).unwrap();
        assert!(validate_width(&g, &layout, 1).unwrap().ok);
    }

    #[test]
    fn shared_endpoint_intersects() {
        let model = [iv(0.0, 1.0), iv(1.0, 2.0)];
        assert_eq!(interval_graph(&model).m(), 1);
    }

    #[test]
    fn permutation_identity_and_reversal() {
        let g = permutation_graph(&[0, 1, 2, 3]).unwrap();
        assert_eq!(g.m(), 0);
        let k = permutation_graph(&[3, 2, 1, 0]).unwrap();
        assert_eq!(k.m(), 6);
        let layout = permutation_layout(&[3, 2, 1, 0]).unwrap().to_rooted(4).unwrap();
        assert!(validate_width(&k, &layout, 1).unwrap().ok);
    }

    #[test]
    fn permutation_rejects_bad_input() {
        assert!(permutation_graph(&[0, 0, 1]).is_err());
        assert!(permutation_graph(&[0, 3]).is_err());
    }

    #[test]
    fn cotree_k22() {
        // join of two disjoint pairs
        let t = Cotree::Join(vec![
            Cotree::Union(vec![Cotree::Leaf(0), Cotree::Leaf(1)]),
            Cotree::Union(vec![Cotree::Leaf(2), Cotree::Leaf(3)]),
        ]);
        let g = cotree_graph(&t).unwrap();
        assert_eq!(g.m(), 4);
        assert!(!g.has_edge(0, 1));
        assert!(g.has_edge(0, 2));
        let layout = cotree_layout(&t).unwrap();
        assert!(validate_width(&g, &layout, 1).unwrap().ok);
    }

    #[test]
    fn cotree_multiway_join_binarizes() {
        let t = Cotree::Join(vec![Cotree::Leaf(0), Cotree::Leaf(1), Cotree::Leaf(2)]);
        let g = cotree_graph(&t).unwrap();
        assert_eq!(g.m(), 3);
        let layout = cotree_layout(&t).unwrap();
        assert_eq!(layout.node_count(), 5);
        assert!(validate_width(&g, &layout, 1).unwrap().ok);
    }

    #[test]
    fn cotree_rejects_malformed() {
        assert!(cotree_graph(&Cotree::Union(vec![Cotree::Leaf(0)])).is_err());
        let dup = Cotree::Join(vec![Cotree::Leaf(0), Cotree::Leaf(0)]);
        assert!(cotree_graph(&dup).is_err());
        let sparse = Cotree::Join(vec![Cotree::Leaf(0), Cotree::Leaf(2)]);
        assert!(cotree_graph(&sparse).is_err());
    }
}
