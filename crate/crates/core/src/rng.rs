//! Seedable PRNG for the randomized verification suites.
//!
//! SplitMix64: 64-bit state advanced by the golden-ratio increment, output
//! mixed with two xor-multiply rounds. The full update is spelled out here
//! so runs reproduce on any platform:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! output = z ^ (z >> 31)
//! ```
//!
//! Bounded draws use plain modulo reduction; the tiny bias is irrelevant for
//! test-corpus sampling and keeps the sequence easy to reproduce elsewhere.

use crate::graph::Graph;
use crate::scalar::Scalar;
use crate::set::Partition;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in `0..bound` (`bound > 0`).
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        self.next_u64() % bound
    }

    /// True with probability `num/den`.
    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }
}

/// Random graph with `n` in `n_min..=n_max`: each vertex pair becomes an
/// edge with probability 1/2. With `weighted`, weights are drawn from
/// `{1, 2, 3}` and each vertex gets a unit loop with probability 1/8.
pub fn random_graph<S: Scalar>(
    rng: &mut SplitMix64,
    n_min: usize,
    n_max: usize,
    weighted: bool,
) -> Graph<S> {
    let n = n_min + rng.below((n_max - n_min + 1) as u64) as usize;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.chance(1, 2) {
                let w = if weighted {
                    S::from_int(1 + rng.below(3) as i64)
                } else {
                    S::one()
                };
                edges.push((u, v, w));
            }
        }
        if weighted && rng.chance(1, 8) {
            edges.push((u, u, S::one()));
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Resamples until the graph is connected with at least one edge.
pub fn random_connected_graph<S: Scalar>(
    rng: &mut SplitMix64,
    n_min: usize,
    n_max: usize,
    weighted: bool,
) -> Graph<S> {
    loop {
        let g = random_graph(rng, n_min, n_max, weighted);
        if g.vertex_count() >= 2 && g.is_connected() && !g.edges().is_empty() {
            return g;
        }
    }
}

/// Uniformly shaped random partition via a random restricted-growth string.
pub fn random_partition(rng: &mut SplitMix64, n: usize) -> Partition {
    assert!(n > 0);
    let mut ids = vec![0usize];
    let mut max_used = 0;
    for _ in 1..n {
        let id = rng.below(max_used as u64 + 2) as usize;
        max_used = max_used.max(id);
        ids.push(id);
    }
    Partition::from_part_ids(&ids)
}
