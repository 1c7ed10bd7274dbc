//! Isomorphism and automorphisms of small graphs by colour refinement plus
//! backtracking. Adequate for the few hundred vertices the constructions
//! produce; no worst-case guarantees.

use std::collections::BTreeMap;

use crate::graph::Graph;

/// Stable colouring of the disjoint union of `graphs`, so colours are comparable.
fn refine(graphs: &[&Graph]) -> Vec<Vec<usize>> {
    let adj: Vec<Vec<Vec<usize>>> = graphs.iter().map(|g| g.adjacency()).collect();
    let mut colors: Vec<Vec<usize>> = adj.iter().map(|a| a.iter().map(Vec::len).collect()).collect();
    let mut classes = usize::MAX;
    loop {
        let mut ids: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let sigs: Vec<Vec<(usize, Vec<usize>)>> = adj
            .iter()
            .zip(&colors)
            .map(|(a, c)| {
                a.iter()
                    .enumerate()
                    .map(|(x, nb)| {
                        let mut s: Vec<usize> = nb.iter().map(|&y| c[y]).collect();
                        s.sort_unstable();
                        (c[x], s)
                    })
                    .collect()
            })
            .collect();
        for s in sigs.iter().flatten() {
            let next = ids.len();
            ids.entry(s.clone()).or_insert(next);
        }
        colors = sigs.iter().map(|v| v.iter().map(|s| ids[s]).collect()).collect();
        if ids.len() == classes {
            return colors;
        }
        classes = ids.len();
    }
}

/// Vertex order for backtracking: rarest colour first, then breadth-first so
/// each vertex tends to have an already-placed neighbour.
fn search_order(g: &Graph, colors: &[usize]) -> Vec<usize> {
    let mut freq: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in colors {
        *freq.entry(c).or_default() += 1;
    }
    let adj = g.adjacency();
    let mut placed = vec![false; g.n()];
    let mut order = Vec::with_capacity(g.n());
    while order.len() < g.n() {
        let start = (0..g.n())
            .filter(|&x| !placed[x])
            .min_by_key(|&x| (freq[&colors[x]], x))
            .expect("unplaced vertex");
        placed[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            let mut next: Vec<usize> = adj[x].iter().copied().filter(|&y| !placed[y]).collect();
            next.sort_by_key(|&y| (freq[&colors[y]], y));
            for y in next {
                placed[y] = true;
                queue.push_back(y);
            }
        }
    }
    order
}

struct Matcher<'a> {
    order: Vec<usize>,
    c1: &'a [usize],
    c2: &'a [usize],
    a1: Vec<Vec<bool>>,
    a2: Vec<Vec<bool>>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Matcher<'_> {
    /// Calls `found` for each complete map; stops when it returns false.
    fn extend(&mut self, depth: usize, found: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return found(&self.map);
        }
        let x = self.order[depth];
        for y in 0..self.c2.len() {
            if self.used[y] || self.c2[y] != self.c1[x] {
                continue;
            }
            let ok = self.order[..depth].iter().all(|&p| self.a1[x][p] == self.a2[y][self.map[p]]);
            if !ok {
                continue;
            }
            self.map[x] = y;
            self.used[y] = true;
            let go_on = self.extend(depth + 1, found);
            self.used[y] = false;
            self.map[x] = usize::MAX;
            if !go_on {
                return false;
            }
        }
        true
    }
}

fn for_each_isomorphism(g1: &Graph, g2: &Graph, found: &mut dyn FnMut(&[usize]) -> bool) {
    if g1.n() != g2.n() || g1.edge_count() != g2.edge_count() {
        return;
    }
    let colors = refine(&[g1, g2]);
    let mut h1 = colors[0].clone();
    let mut h2 = colors[1].clone();
    h1.sort_unstable();
    h2.sort_unstable();
    if h1 != h2 {
        return;
    }
    let mut m = Matcher {
        order: search_order(g1, &colors[0]),
        c1: &colors[0],
        c2: &colors[1],
        a1: g1.adjacency_matrix(),
        a2: g2.adjacency_matrix(),
        map: vec![usize::MAX; g1.n()],
        used: vec![false; g2.n()],
    };
    m.extend(0, found);
}

/// A bijection `σ` with `{x, y} ∈ E1 ⇔ {σx, σy} ∈ E2`, if one exists.
pub fn find_isomorphism(g1: &Graph, g2: &Graph) -> Option<Vec<usize>> {
    let mut out = None;
    for_each_isomorphism(g1, g2, &mut |m| {
        out = Some(m.to_vec());
        false
    });
    out
}

pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    find_isomorphism(g1, g2).is_some()
}

/// Up to `limit` automorphisms, the identity among them.
pub fn automorphisms(g: &Graph, limit: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_isomorphism(g, g, &mut |m| {
        out.push(m.to_vec());
        out.len() < limit
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{icosahedron, octahedron, ring_of_roofs};
    use proptest::prelude::*;

    #[test]
    fn symmetry_group_orders() {
        assert_eq!(automorphisms(&octahedron(), 1000).len(), 48);
        assert_eq!(automorphisms(&icosahedron(), 1000).len(), 120);
        assert_eq!(automorphisms(&Graph::complete(4), 1000).len(), 24);
    }

    #[test]
    fn distinguishes_rings() {
        let r7 = ring_of_roofs(7).unwrap().graph;
        let r8 = ring_of_roofs(8).unwrap().graph;
        assert!(!are_isomorphic(&r7, &r8));
        assert!(are_isomorphic(&r7, &r7));
        let c6 = Graph::new(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let two_triangles = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!are_isomorphic(&c6, &two_triangles));
    }

    proptest! {
        #[test]
        fn relabelled_graphs_are_isomorphic(
            n in 2usize..10,
            bits in proptest::collection::vec(any::<bool>(), 45),
            perm_seed in any::<u64>(),
        ) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut e = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] { e.push((u, v)); }
                    k += 1;
                }
            }
            let g = Graph::new(n, e).unwrap();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed));
            let h = g.relabel(n, &perm).unwrap();
            let sigma = find_isomorphism(&g, &h).unwrap();
            for p in g.edges() {
                prop_assert!(h.has_edge(sigma[p.u], sigma[p.v]));
            }
        }
    }
}
