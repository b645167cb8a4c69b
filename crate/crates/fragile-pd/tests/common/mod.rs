//! Helpers shared by the integration test suites: a naive propagation
//! oracle and seeded random instance generators.

// Each test target compiles this module separately and uses a subset of it.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use fragile_pd::{Graph, VertexSet};

/// Reference implementation of the observation process: domination, then
/// repeated scans applying one applicable force at a time in a randomized
/// order. Any maximal forcing sequence yields the same closure, so this must
/// agree with the optimized engine for every seed.
pub fn naive_observe(g: &Graph, active: &VertexSet, rng: &mut ChaCha8Rng) -> VertexSet {
    let mut obs: BTreeSet<usize> = BTreeSet::new();
    for v in active.iter() {
        obs.insert(v);
        obs.extend(g.neighbors(v).iter().copied());
    }
    loop {
        let mut candidates = Vec::new();
        for &u in &obs {
            let unobserved: Vec<usize> = g
                .neighbors(u)
                .iter()
                .copied()
                .filter(|w| !obs.contains(w))
                .collect();
            if unobserved.len() == 1 {
                candidates.push(unobserved[0]);
            }
        }
        if candidates.is_empty() {
            return obs.into_iter().collect();
        }
        let pick = candidates[rng.gen_range(0..candidates.len())];
        obs.insert(pick);
    }
}

/// An Erdos-Renyi style graph on `n` vertices with edge probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// A uniformly random subset of `0..n` with exactly `size` members.
pub fn random_set(rng: &mut ChaCha8Rng, n: usize, size: usize) -> VertexSet {
    let mut s = VertexSet::new();
    while s.len() < size.min(n) {
        s.insert(rng.gen_range(0..n));
    }
    s
}
