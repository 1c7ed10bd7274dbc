use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{ConstructionError, ConstructionResult, Provenance};
use crate::graph::{Graph, VertexPair};
use crate::iso;
use crate::rigidity::{self, RankConfig, SearchStatus};

/// Chains `k` copies of `base` into a ring. Copy `i` has its `hinge_a` on ring
/// hinge `i` and its `hinge_b` on ring hinge `i + 1`; `hinge_b.0` of one copy is
/// glued to `hinge_a.0` of the next, likewise `.1`.
///
/// Ring hinge `j` is `{2j, 2j+1}`; the remaining vertices of copy `i` follow in
/// base order from `2k + i(|base| − 4)`.
pub fn ring_of_polyhedra(
    base: &Graph,
    hinge_a: (usize, usize),
    hinge_b: (usize, usize),
    k: usize,
) -> Result<ConstructionResult, ConstructionError> {
    if k < 3 {
        return Err(ConstructionError::BadParameter(format!(
            "a ring needs every hinge shared by exactly two bodies, so k ≥ 3; got {k}"
        )));
    }
    let ends = [hinge_a.0, hinge_a.1, hinge_b.0, hinge_b.1];
    if ends.iter().any(|&x| x >= base.n()) || !super::all_distinct(&ends) {
        return Err(ConstructionError::BadVertices(format!("hinges {hinge_a:?}, {hinge_b:?} must be disjoint pairs of base vertices")));
    }
    let inner: Vec<usize> = (0..base.n()).filter(|x| !ends.contains(x)).collect();
    let per = inner.len();
    let n = 2 * k + k * per;
    let mut edges = BTreeSet::new();
    let mut bodies = Vec::with_capacity(k);
    for i in 0..k {
        let next = (i + 1) % k;
        let mut map = vec![0; base.n()];
        map[hinge_a.0] = 2 * i;
        map[hinge_a.1] = 2 * i + 1;
        map[hinge_b.0] = 2 * next;
        map[hinge_b.1] = 2 * next + 1;
        for (j, &x) in inner.iter().enumerate() {
            map[x] = 2 * k + i * per + j;
        }
        edges.extend(base.edges().iter().map(|e| e.map(|x| map[x])));
        let mut body = map.clone();
        body.sort_unstable();
        bodies.push(body);
    }
    let graph = Graph::from_pairs_dedup(n, edges)?;
    let hinges: Vec<VertexPair> = (0..k).map(|j| VertexPair::new(2 * j, 2 * j + 1)).collect();
    let marked = hinges.iter().copied().filter(|h| !graph.has_edge(h.u, h.v)).collect();
    Ok(ConstructionResult {
        marked_nonedges: marked,
        hinges,
        bodies,
        ..ConstructionResult::plain(
            graph,
            Provenance::new("ring-of-polyhedra", json!({ "k": k, "hinge_a": hinge_a, "hinge_b": hinge_b })),
        )
    })
}

/// One evaluated hinge choice: drop `dropped` from the base and use it, with
/// the non-edge `nonedge`, as the two hinges (`nonedge.0` glued to `dropped.0`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HingeChoice {
    pub dropped: (usize, usize),
    pub nonedge: (usize, usize),
    pub independent: bool,
    pub nucleation_free: bool,
    pub hinges_implied: bool,
}

impl HingeChoice {
    pub fn passes(&self) -> bool {
        self.independent && self.nucleation_free && self.hinges_implied
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HingeSearch {
    pub ring_size: usize,
    pub automorphisms: usize,
    pub candidates: usize,
    pub choices: Vec<HingeChoice>,
}

impl HingeSearch {
    pub fn passing(&self) -> Vec<&HingeChoice> {
        self.choices.iter().filter(|c| c.passes()).collect()
    }
}

pub const HINGE_CANDIDATE_CAP: usize = 10_000;

/// Enumerates (edge to drop, disjoint non-edge, gluing orientation) up to
/// automorphisms of `base`, builds the ring of `k` copies for one
/// representative per orbit, and records independence, nucleation-freeness
/// and whether every hinge is implied. Fails when no choice passes.
pub fn search_hinge_pairs(base: &Graph, k: usize) -> Result<HingeSearch, ConstructionError> {
    search_hinge_pairs_with(base, k, &RankConfig::default())
}

pub fn search_hinge_pairs_with(base: &Graph, k: usize, cfg: &RankConfig) -> Result<HingeSearch, ConstructionError> {
    let autos = iso::automorphisms(base, 100_000);
    let canon = |e: (usize, usize), f: (usize, usize)| {
        autos
            .iter()
            .map(|s| {
                let (e0, e1, f0, f1) = (s[e.0], s[e.1], s[f.0], s[f.1]);
                if e0 < e1 { (e0, e1, f0, f1) } else { (e1, e0, f1, f0) }
            })
            .min()
            .expect("identity automorphism present")
    };
    let mut reps = BTreeSet::new();
    let mut candidates = 0;
    'outer: for e in base.edges() {
        for f in base.non_edges() {
            if f.contains(e.u) || f.contains(e.v) {
                continue;
            }
            for f_or in [(f.u, f.v), (f.v, f.u)] {
                if candidates == HINGE_CANDIDATE_CAP {
                    break 'outer;
                }
                candidates += 1;
                reps.insert(canon((e.u, e.v), f_or));
            }
        }
    }

    let mut choices = Vec::new();
    for (e0, e1, f0, f1) in reps {
        let modified = base.without_edge(VertexPair::new(e0, e1));
        let ring = ring_of_polyhedra(&modified, (e0, e1), (f0, f1), k)?;
        let g = &ring.graph;
        let independent = rigidity::is_independent_with(g, cfg);
        let implied: BTreeSet<VertexPair> = rigidity::implied_nonedges_with(g, cfg).implied.into_iter().collect();
        let hinges_implied = ring.hinges.iter().all(|h| implied.contains(h));
        let search = rigidity::find_nucleations_with(g, g.n(), cfg, rigidity::NUCLEATION_CANDIDATE_CAP);
        let nucleation_free = search.nucleations.is_empty() && search.status != SearchStatus::CandidateCapReached;
        choices.push(HingeChoice { dropped: (e0, e1), nonedge: (f0, f1), independent, nucleation_free, hinges_implied });
    }
    let out = HingeSearch { ring_size: k, automorphisms: autos.len(), candidates, choices };
    if out.passing().is_empty() {
        return Err(ConstructionError::NoValidHinges);
    }
    Ok(out)
}
