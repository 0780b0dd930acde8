#![allow(dead_code)]

pub mod figures;

use fim_core::extremal::{gen_random_bounded, gen_t_star};
use fim_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Drops every component of order at most 2 and relabels.
pub fn without_small_components(g: &Graph) -> Graph {
    let keep: Vec<usize> = g.components().into_iter().filter(|c| c.len() >= 3).flatten().collect();
    g.induced_subgraph(&keep).unwrap().graph
}

/// Disjoint union, `b`'s vertices shifted past `a`'s.
pub fn union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.n();
    let edges = a
        .edges()
        .iter()
        .copied()
        .chain(b.edges().iter().map(|&(u, v)| (u + shift, v + shift)));
    Graph::new(a.n() + b.n(), edges).unwrap()
}

pub fn with_edges(g: &Graph, extra: &[(usize, usize)], n: usize) -> Option<Graph> {
    Graph::new(n.max(g.n()), g.edges().iter().copied().chain(extra.iter().copied())).ok()
}

/// Random graphs built around `T*` copies and pendant paths, which are the
/// shapes where the dual construction meets its bound or nearly so.
pub fn near_extremal(seed: u64, delta: usize, max_n: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(0);
    while g.n() + 2 * delta < max_n && (g.n() == 0 || rng.random_bool(0.6)) {
        let piece = if rng.random_bool(0.7) {
            gen_t_star(rng.random_range(1..=delta)).unwrap()
        } else {
            let k = rng.random_range(3..=6.min(max_n - g.n()));
            gen_random_bounded(k, delta, rng.random()).unwrap()
        };
        g = union(&g, &piece);
    }
    let tries = rng.random_range(0..=g.n());
    for _ in 0..tries {
        let (a, b) = (rng.random_range(0..g.n()), rng.random_range(0..g.n()));
        if a != b && g.degree(a) < delta && g.degree(b) < delta && g.edge_between(a, b).is_none() {
            g = with_edges(&g, &[(a, b)], g.n()).unwrap();
        }
    }
    without_small_components(&g)
}

/// Seeded random graphs of maximum degree at most `delta`, deduplicated up
/// to relabelling-free equality, with at least one edge.
pub fn random_corpus(count: usize, n_range: (usize, usize), delta: usize, seed0: u64) -> Vec<Graph> {
    let mut out: Vec<Graph> = Vec::new();
    let mut seed = seed0;
    while out.len() < count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        seed += 1;
        let n = rng.random_range(n_range.0..=n_range.1);
        let g = gen_random_bounded(n, delta, rng.random()).unwrap();
        // thin out a random share of the edges so sparse shapes show up too
        let keep = rng.random_range(0.4..=1.0);
        let edges: Vec<_> = g.edges().iter().copied().filter(|_| rng.random_bool(keep)).collect();
        let g = Graph::new(n, edges).unwrap();
        if g.m() > 0 && !out.contains(&g) {
            out.push(g);
        }
    }
    out
}
