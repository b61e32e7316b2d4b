//! Seeded random instances with layouts known to have width 1.

use mimsolve_core::builders::{
    interval_graph, interval_layout, permutation_graph, permutation_layout, Interval,
};
use mimsolve_core::error::Result;
use mimsolve_core::{Graph, RootedLayout};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random interval graph with its canonical layout. Interval left ends are
/// uniform on [0, 1] and lengths uniform on [0, max_len], so `max_len`
/// controls the expected density (expected degree is about `2 * max_len * n`
/// for small `max_len`).
pub fn random_interval_instance(
    n: usize,
    max_len: f64,
    seed: u64,
) -> Result<(Graph, RootedLayout)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let intervals: Vec<Interval> = (0..n)
        .map(|_| {
            let left: f64 = rng.gen_range(0.0..1.0);
            let len: f64 = rng.gen_range(0.0..=max_len);
            Interval::new(left, left + len)
        })
        .collect::<Result<_>>()?;
    let g = interval_graph(&intervals);
    let layout = interval_layout(&intervals).to_rooted(n)?;
    Ok((g, layout))
}

/// A random permutation graph with its canonical layout.
pub fn random_permutation_instance(n: usize, seed: u64) -> Result<(Graph, RootedLayout)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.shuffle(&mut rng);
    let g = permutation_graph(&perm)?;
    let layout = permutation_layout(&perm)?.to_rooted(n)?;
    Ok((g, layout))
}

/// A uniformly random permutation of 0..n-1.
pub fn random_relabeling(n: usize, seed: u64) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.shuffle(&mut rng);
    perm
}
