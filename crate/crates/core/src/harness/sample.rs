//! Seeded graph sources.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// Edge probabilities cycled through by the random-sample mode.
pub const EDGE_PROBABILITIES: [f64; 3] = [0.3, 0.5, 0.7];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi `G(n, p)` draw.
pub fn gnp<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Redraws `G(n, p)` until connected; returns the graph and the number of
/// draws it took.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> (Graph, usize) {
    let mut draws = 0;
    loop {
        draws += 1;
        let g = gnp(rng, n, p);
        if g.is_connected().unwrap_or(false) {
            return (g, draws);
        }
    }
}

/// `count` connected graphs with orders drawn uniformly from
/// `min_order..=max_order` and `p` cycling through [`EDGE_PROBABILITIES`].
pub fn random_connected_batch(seed: u64, count: usize, min_order: usize, max_order: usize) -> Vec<Graph> {
    let mut rng = rng(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(min_order..=max_order);
            random_connected(&mut rng, n, EDGE_PROBABILITIES[i % 3]).0
        })
        .collect()
}
