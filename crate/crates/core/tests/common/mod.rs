#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rigiscope_core::constructions::{henneberg1, henneberg2, Distribution, Side};
use rigiscope_core::{Graph, VertexPair};

/// Independent graph on `n ≥ 4` vertices: K4 grown by random Henneberg moves,
/// then up to `max_deletions` random edges removed.
pub fn random_henneberg(n: usize, max_deletions: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::complete(4);
    while g.n() < n {
        let mut vs: Vec<usize> = (0..g.n()).collect();
        vs.shuffle(rng);
        g = if rng.gen_bool(0.5) {
            henneberg1(&g, [vs[0], vs[1], vs[2]]).unwrap().graph
        } else {
            let e = *g.edges().choose(rng).unwrap();
            let others: Vec<usize> = vs.into_iter().filter(|&x| !e.contains(x)).take(2).collect();
            henneberg2(&g, [e.u, e.v, others[0], others[1]], e).unwrap().graph
        };
    }
    let deletions = rng.gen_range(0..=max_deletions);
    for _ in 0..deletions {
        let e = *g.edges().choose(rng).unwrap();
        g = g.without_edge(e);
    }
    g
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every edge at `ab` assigned to a random side.
pub fn random_distribution(h: &Graph, ab: VertexPair, rng: &mut ChaCha8Rng) -> Distribution {
    h.edges()
        .iter()
        .filter(|e| e.contains(ab.u) || e.contains(ab.v))
        .map(|e| (*e, if rng.gen_bool(0.5) { Side::One } else { Side::Two }))
        .collect()
}

/// Erdős–Rényi graph with edge probability `p`.
pub fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                e.push((u, v));
            }
        }
    }
    Graph::new(n, e).unwrap()
}

/// All vertex subsets of size ≥ 3 obey `|E(S)| ≤ 3|S| − 6`.
pub fn brute_force_sparse(g: &Graph) -> bool {
    let n = g.n();
    (0u32..1 << n).all(|mask| {
        let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        s.len() < 3 || g.induced_edge_count(&s) <= 3 * s.len() - 6
    })
}
