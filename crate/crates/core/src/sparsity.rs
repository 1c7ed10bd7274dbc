//! Maxwell counting: (3,6)-sparsity by pebble game, and a counting proxy for
//! module-rigidity.
//!
//! Counts are imposed on vertex sets of size at least three; a single edge
//! would otherwise violate `|E'| ≤ 3|V'| − 6`.
//!
//! Because `l = 2k` here, two endpoints alone can never hold the seven pebbles
//! the usual acceptance test asks for. An edge `uv` is accepted instead when
//! seven pebbles can be gathered on `{u, v, w}` for every third vertex `w`.
//! A failed gather leaves a reach set with no outgoing edges and exactly six
//! pebbles, which is a tight set containing the triple.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexPair};
use crate::rigidity::{self, RankConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparsityVerdict {
    pub is_sparse: bool,
    pub is_tight: bool,
    /// A vertex set with more than `3|V'| − 6` induced edges, when not sparse.
    pub violating_subgraph: Option<Vec<usize>>,
}

/// Directed pebble-game state over `n` vertices.
struct PebbleGame {
    pebbles: Vec<u8>,
    out: Vec<Vec<usize>>,
}

impl PebbleGame {
    fn new(n: usize) -> Self {
        PebbleGame { pebbles: vec![3; n], out: vec![Vec::new(); n] }
    }

    fn count(&self, t: &[usize]) -> usize {
        t.iter().map(|&x| self.pebbles[x] as usize).sum()
    }

    /// Moves one free pebble from outside `t` onto a vertex of `t` by
    /// reversing a directed path. On failure returns the reach set of `t`.
    fn pull_one(&mut self, t: &[usize]) -> Result<(), Vec<usize>> {
        let n = self.pebbles.len();
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut stack: Vec<usize> = t.to_vec();
        for &x in t {
            seen[x] = true;
        }
        let mut order = stack.clone();
        while let Some(x) = stack.pop() {
            for i in 0..self.out[x].len() {
                let y = self.out[x][i];
                if seen[y] {
                    continue;
                }
                seen[y] = true;
                parent[y] = x;
                if self.pebbles[y] > 0 {
                    self.reverse_path(&parent, y);
                    return Ok(());
                }
                stack.push(y);
                order.push(y);
            }
        }
        order.sort_unstable();
        Err(order)
    }

    fn reverse_path(&mut self, parent: &[usize], end: usize) {
        self.pebbles[end] -= 1;
        let mut y = end;
        while parent[y] != usize::MAX {
            let x = parent[y];
            let pos = self.out[x].iter().position(|&z| z == y).expect("edge on path");
            self.out[x].swap_remove(pos);
            self.out[y].push(x);
            y = x;
        }
        self.pebbles[y] += 1;
    }

    /// Collects `need` pebbles on `t`, or returns the blocking reach set.
    fn gather(&mut self, t: &[usize], need: usize) -> Result<(), Vec<usize>> {
        while self.count(t) < need {
            self.pull_one(t)?;
        }
        Ok(())
    }

    /// Tries to insert `uv`; on rejection returns a tight set containing `u`, `v`.
    fn try_add(&mut self, u: usize, v: usize) -> Result<(), Vec<usize>> {
        for w in 0..self.pebbles.len() {
            if w != u && w != v {
                self.gather(&[u, v, w], 7)?;
            }
        }
        let from = if self.pebbles[u] > 0 { u } else { v };
        let to = if from == u { v } else { u };
        self.pebbles[from] -= 1;
        self.out[from].push(to);
        Ok(())
    }
}

fn run_game(g: &Graph) -> (PebbleGame, Option<Vec<usize>>) {
    let mut game = PebbleGame::new(g.n());
    for e in g.edges() {
        if let Err(witness) = game.try_add(e.u, e.v) {
            return (game, Some(witness));
        }
    }
    (game, None)
}

/// (3,6)-sparsity with a witness on failure.
pub fn maxwell_check(g: &Graph) -> SparsityVerdict {
    let (_, witness) = run_game(g);
    let is_sparse = witness.is_none();
    SparsityVerdict {
        is_sparse,
        is_tight: is_sparse && g.n() >= 3 && g.edge_count() == 3 * g.n() - 6,
        violating_subgraph: witness,
    }
}

/// Inclusion-maximal proper tight vertex sets with at least five vertices.
///
/// Minimal tight sets are read off failed gathers on triples; sets sharing at
/// least three vertices are merged while their union stays proper, since such
/// a union is again tight.
pub fn proper_tight_sets(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let (mut game, witness) = run_game(g);
    if witness.is_some() || n < 6 {
        return Vec::new();
    }
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let inside = |sets: &[Vec<usize>], t: &[usize]| {
        sets.iter().any(|s| t.iter().all(|x| s.binary_search(x).is_ok()))
    };
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let t = [a, b, c];
                if inside(&sets, &t) {
                    continue;
                }
                if let Err(reach) = game.gather(&t, 7) {
                    if reach.len() >= 5 && reach.len() < n {
                        sets.push(reach);
                    }
                }
            }
        }
    }
    merge_overlapping(&mut sets, n);
    sets.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    sets
}

fn merge_overlapping(sets: &mut Vec<Vec<usize>>, n: usize) {
    loop {
        let mut merged = false;
        'outer: for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                let common = sets[i].iter().filter(|x| sets[j].binary_search(x).is_ok()).count();
                if common >= 3 {
                    let mut u = sets[i].clone();
                    u.extend(sets[j].iter().copied());
                    u.sort_unstable();
                    u.dedup();
                    if u.len() < n {
                        sets[i] = u;
                        sets.swap_remove(j);
                        merged = true;
                        break 'outer;
                    }
                }
            }
        }
        if !merged {
            break;
        }
    }
    let snapshot = sets.clone();
    sets.retain(|s| !snapshot.iter().any(|t| t.len() > s.len() && s.iter().all(|x| t.binary_search(x).is_ok())));
    sets.sort();
    sets.dedup();
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleRigidity {
    pub module_rigid: bool,
    pub completed_graph: Graph,
    pub nuclei_found: Vec<Vec<usize>>,
    /// Rank the proxy credits the graph with after completing the nuclei.
    pub effective_count: usize,
}

/// Counting proxy: complete every proper tight nucleus that is itself
/// module-rigid, then compare the resulting body-and-bar count with `3n − 6`.
///
/// Each nucleus `N` contributes `3|N| − 6`, every edge outside all nuclei
/// contributes 1, and a pair lying in `d ≥ 2` nuclei is charged `d − 1` times.
/// Without nuclei this is the plain tightness test.
pub fn module_rigidity_approx(g: &Graph) -> ModuleRigidity {
    let n = g.n();
    if n < 3 {
        let complete = g.edge_count() == n * n.saturating_sub(1) / 2;
        return ModuleRigidity { module_rigid: complete, completed_graph: g.clone(), nuclei_found: Vec::new(), effective_count: g.edge_count() };
    }
    let verdict = maxwell_check(g);
    if !verdict.is_sparse {
        return ModuleRigidity { module_rigid: false, completed_graph: g.clone(), nuclei_found: Vec::new(), effective_count: g.edge_count() };
    }

    let nuclei: Vec<Vec<usize>> = proper_tight_sets(g)
        .into_iter()
        .filter(|s| module_rigidity_approx(&g.induced(s).expect("vertices in range").graph).module_rigid)
        .collect();

    let mut completed = g.clone();
    for s in &nuclei {
        let pairs = s.iter().enumerate().flat_map(|(i, &a)| s[i + 1..].iter().map(move |&b| VertexPair::new(a, b)));
        completed = completed.with_edges(pairs.collect::<Vec<_>>());
    }

    let overlapping = nuclei.iter().enumerate().any(|(i, a)| {
        nuclei[i + 1..].iter().any(|b| a.iter().filter(|x| b.binary_search(x).is_ok()).count() >= 3)
    });
    let effective_count = if nuclei.is_empty() || overlapping {
        g.edge_count()
    } else {
        let in_some = |e: &VertexPair| nuclei.iter().any(|s| s.binary_search(&e.u).is_ok() && s.binary_search(&e.v).is_ok());
        let outside = g.edges().iter().filter(|e| !in_some(e)).count();
        let mut shared: BTreeMap<VertexPair, usize> = BTreeMap::new();
        for s in &nuclei {
            for (i, &a) in s.iter().enumerate() {
                for &b in &s[i + 1..] {
                    *shared.entry(VertexPair::new(a, b)).or_default() += 1;
                }
            }
        }
        let bodies: usize = nuclei.iter().map(|s| 3 * s.len() - 6).sum();
        let over: usize = shared.values().map(|d| d - 1).sum();
        (bodies + outside).saturating_sub(over)
    };

    ModuleRigidity {
        module_rigid: effective_count == 3 * n - 6,
        completed_graph: completed,
        nuclei_found: nuclei,
        effective_count,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub module_rigid: bool,
    pub truly_rigid: bool,
    pub dof: usize,
    /// Module-rigid yet generically flexible.
    pub gap: bool,
}

pub fn rigidity_gap_report(g: &Graph) -> GapReport {
    rigidity_gap_report_with(g, &RankConfig::default())
}

pub fn rigidity_gap_report_with(g: &Graph, cfg: &RankConfig) -> GapReport {
    let module_rigid = module_rigidity_approx(g).module_rigid;
    let dof = rigidity::dof_with(g, cfg);
    GapReport { module_rigid, truly_rigid: dof == 0, dof, gap: module_rigid && dof != 0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    /// Checks every vertex subset of size ≥ 3 directly.
    fn brute_force_sparse(g: &Graph) -> bool {
        let n = g.n();
        (0u32..1 << n).all(|mask| {
            let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            s.len() < 3 || g.induced_edge_count(&s) <= 3 * s.len() - 6
        })
    }

    #[test]
    fn k5_is_overbraced() {
        let v = maxwell_check(&Graph::complete(5));
        assert!(!v.is_sparse);
        assert_eq!(v.violating_subgraph, Some(vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn small_cases() {
        assert!(maxwell_check(&Graph::complete(2)).is_sparse);
        assert!(maxwell_check(&Graph::complete(4)).is_tight);
        assert!(module_rigidity_approx(&Graph::complete(4)).module_rigid);
        let banana = constructions::banana().graph;
        assert!(maxwell_check(&banana).is_tight);
        assert!(module_rigidity_approx(&banana).module_rigid);
        assert!(!rigidity_gap_report(&banana).gap);
    }

    #[test]
    fn double_banana_proxy_detects_dependence() {
        let g = constructions::double_banana().graph;
        let v = maxwell_check(&g);
        assert!(v.is_sparse && v.is_tight);
        let m = module_rigidity_approx(&g);
        assert_eq!(m.nuclei_found, vec![vec![0, 1, 2, 3, 4], vec![0, 1, 5, 6, 7]]);
        assert_eq!(m.effective_count, 17);
        assert!(!m.module_rigid);
        assert!(m.completed_graph.has_edge(0, 1));
    }

    #[test]
    fn witness_violates_counts() {
        let mut e: Vec<(usize, usize)> = Graph::complete(5).edges().iter().map(|p| (p.u, p.v)).collect();
        e.extend([(5, 0), (5, 1), (6, 5)]);
        let g = Graph::new(7, e).unwrap();
        let w = maxwell_check(&g).violating_subgraph.unwrap();
        assert!(g.induced_edge_count(&w) > 3 * w.len() - 6);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_graph() -> impl Strategy<Value = Graph> {
            (1usize..9, 0.2f64..0.9).prop_flat_map(|(n, p)| {
                proptest::collection::vec(proptest::bool::weighted(p), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
                    let mut e = Vec::new();
                    let mut k = 0;
                    for u in 0..n {
                        for v in u + 1..n {
                            if bits[k] {
                                e.push((u, v));
                            }
                            k += 1;
                        }
                    }
                    Graph::new(n, e).unwrap()
                })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(300))]

            #[test]
            fn pebble_game_matches_brute_force(g in arb_graph()) {
                let v = maxwell_check(&g);
                prop_assert_eq!(v.is_sparse, brute_force_sparse(&g));
                if let Some(w) = v.violating_subgraph {
                    prop_assert!(w.len() >= 3 && g.induced_edge_count(&w) > 3 * w.len() - 6);
                }
                if v.is_tight {
                    prop_assert_eq!(g.edge_count(), 3 * g.n() - 6);
                }
            }

            #[test]
            fn tight_sets_are_tight(g in arb_graph()) {
                for s in proper_tight_sets(&g) {
                    prop_assert!(s.len() >= 5 && s.len() < g.n());
                    prop_assert_eq!(g.induced_edge_count(&s), 3 * s.len() - 6);
                }
            }
        }
    }
}
