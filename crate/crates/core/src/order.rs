/// Total order on a subset of the vertices of a graph.
///
/// Chain orders live on the vertex set below a layout node (lower orders)
/// or on its complement (upper orders), so an order only ranks the
/// vertices it covers. Comparing uncovered vertices is a caller bug and
/// panics in debug builds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalOrder {
    rank: Vec<u32>,
    len: u32,
}

pub const UNRANKED: u32 = u32::MAX;

impl TotalOrder {
    /// Order listing `seq` from smallest to largest.
    pub fn from_sequence(n: usize, seq: &[u32]) -> Self {
        let mut rank = vec![UNRANKED; n];
        for (i, &v) in seq.iter().enumerate() {
            debug_assert!((v as usize) < n);
            debug_assert_eq!(rank[v as usize], UNRANKED, "duplicate vertex in order");
            rank[v as usize] = i as u32;
        }
        TotalOrder {
            rank,
            len: seq.len() as u32,
        }
    }

    /// Vertex-index order on all of `0..n`.
    pub fn identity(n: usize) -> Self {
        TotalOrder {
            rank: (0..n as u32).collect(),
            len: n as u32,
        }
    }

    pub fn covers(&self, v: u32) -> bool {
        self.rank[v as usize] != UNRANKED
    }

    pub fn rank(&self, v: u32) -> u32 {
        let r = self.rank[v as usize];
        debug_assert_ne!(r, UNRANKED, "vertex {v} not covered by this order");
        r
    }

    pub fn less(&self, u: u32, v: u32) -> bool {
        self.rank(u) < self.rank(v)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Maximum of an iterator of covered vertices.
    pub fn max_of<I: IntoIterator<Item = u32>>(&self, iter: I) -> Option<u32> {
        iter.into_iter().max_by_key(|&v| self.rank(v))
    }

    pub fn min_of<I: IntoIterator<Item = u32>>(&self, iter: I) -> Option<u32> {
        iter.into_iter().min_by_key(|&v| self.rank(v))
    }

    /// Same coverage, reversed comparisons.
    pub fn reversed(&self) -> TotalOrder {
        let mut rank = self.rank.clone();
        for r in rank.iter_mut() {
            if *r != UNRANKED {
                *r = self.len - 1 - *r;
            }
        }
        TotalOrder {
            rank,
            len: self.len,
        }
    }

    /// Covered vertices from smallest to largest.
    pub fn sequence(&self) -> Vec<u32> {
        let mut seq: Vec<u32> = (0..self.rank.len() as u32).filter(|&v| self.covers(v)).collect();
        seq.sort_by_key(|&v| self.rank(v));
        seq
    }
}
