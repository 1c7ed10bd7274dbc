use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{roof_edges, ConstructionError, ConstructionResult, Provenance};
use crate::cover_bounds;
use crate::graph::{validate_cover, Cover, Graph, VertexPair};
use crate::rigidity::{self, RankConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

/// Side assignment for the edges of `H` at the endpoints of the split non-edge.
pub type Distribution = BTreeMap<VertexPair, Side>;

/// Vertex ids used by [`roof_addition`] for a host graph on `n` vertices.
/// `a1 = a` and `b1 = b` keep their ids; the rest are appended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoofAdditionLayout {
    pub a1: usize,
    pub b1: usize,
    pub a2: usize,
    pub b2: usize,
    pub u: usize,
    pub v: usize,
    pub c: usize,
    pub c2: usize,
}

impl RoofAdditionLayout {
    pub fn new(n: usize, ab: VertexPair) -> Self {
        RoofAdditionLayout { a1: ab.u, b1: ab.v, a2: n, b2: n + 1, u: n + 2, v: n + 3, c: n + 4, c2: n + 5 }
    }

    /// Where a vertex of `H` incident to an edge on `side` lands.
    fn place(&self, x: usize, side: Side) -> usize {
        match side {
            Side::One => x,
            Side::Two if x == self.a1 => self.a2,
            Side::Two if x == self.b1 => self.b2,
            Side::Two => x,
        }
    }
}

fn check_distribution(h: &Graph, ab: VertexPair, dist: &Distribution) -> Result<(), ConstructionError> {
    if ab.v >= h.n() {
        return Err(ConstructionError::BadVertices(format!("{ab} not in a graph on {} vertices", h.n())));
    }
    if h.has_edge(ab.u, ab.v) {
        return Err(ConstructionError::NotANonEdge(ab));
    }
    for e in h.edges().iter().filter(|e| e.contains(ab.u) || e.contains(ab.v)) {
        if !dist.contains_key(e) {
            return Err(ConstructionError::IncompleteDistribution(*e));
        }
    }
    if let Some(e) = dist.keys().find(|e| !h.has_edge(e.u, e.v) || !(e.contains(ab.u) || e.contains(ab.v))) {
        return Err(ConstructionError::BadParameter(format!("{e} is not an edge of H at the split pair")));
    }
    Ok(())
}

/// `H` with `a` and `b` split into `a1, a2` and `b1, b2` according to `dist`,
/// on `n + 2` vertices and before any roof is attached.
pub fn cut_graph(h: &Graph, ab: VertexPair, dist: &Distribution) -> Result<Graph, ConstructionError> {
    check_distribution(h, ab, dist)?;
    let lay = RoofAdditionLayout::new(h.n(), ab);
    let edges = h.edges().iter().map(|e| match dist.get(e) {
        Some(&side) => e.map(|x| if x == ab.u || x == ab.v { lay.place(x, side) } else { x }),
        None => *e,
    });
    Ok(Graph::from_pairs_dedup(h.n() + 2, edges)?)
}

/// Splits the non-edge `{a, b}` of `H` and attaches two roofs: `R1` on hinges
/// `{a1, b1}`, `{u, v}` with apex `c`, and `R2` on `{a2, b2}`, `{u, v}` with apex `c'`.
pub fn roof_addition(h: &Graph, ab: VertexPair, dist: &Distribution) -> Result<ConstructionResult, ConstructionError> {
    let cut = cut_graph(h, ab, dist)?;
    let lay = RoofAdditionLayout::new(h.n(), ab);
    let mut edges: Vec<VertexPair> = cut.edges().to_vec();
    for (x, y, apex) in [(lay.a1, lay.b1, lay.c), (lay.a2, lay.b2, lay.c2)] {
        edges.extend(roof_edges((x, y), (lay.u, lay.v), apex).iter().map(|&(p, q)| VertexPair::new(p, q)));
    }
    let graph = Graph::from_pairs_dedup(h.n() + 6, edges)?;
    let dist_json: Vec<_> = dist.iter().map(|(e, s)| json!([e, s])).collect();
    Ok(ConstructionResult {
        vertex_maps: vec![(0..h.n()).collect()],
        marked_nonedges: vec![
            VertexPair::new(lay.a1, lay.b1),
            VertexPair::new(lay.a2, lay.b2),
            VertexPair::new(lay.u, lay.v),
        ],
        ..ConstructionResult::plain(
            graph,
            Provenance::new("roof-addition", json!({ "nonedge": ab, "distribution": dist_json, "layout": lay })),
        )
    })
}

/// The covering sets containing both `a` and `b`, in cover order.
fn holders(cover: &Cover, ab: VertexPair) -> Vec<usize> {
    (0..cover.sets.len())
        .filter(|&i| cover.sets[i].contains(&ab.u) && cover.sets[i].contains(&ab.v))
        .collect()
}

/// Puts the edges at `a`, `b` inside the first covering set that contains
/// `{a, b}` on side 1 and every other such edge on side 2.
pub fn natural_distribution(h: &Graph, cover: &Cover, ab: VertexPair) -> Result<Distribution, ConstructionError> {
    let hs = holders(cover, ab);
    let Some(&first) = hs.first() else {
        return Err(ConstructionError::BadParameter(format!("no covering set contains {ab}")));
    };
    let set = &cover.sets[first];
    Ok(h.edges()
        .iter()
        .filter(|e| e.contains(ab.u) || e.contains(ab.v))
        .map(|e| (*e, if set.contains(&e.u) && set.contains(&e.v) { Side::One } else { Side::Two }))
        .collect())
}

/// Carries a cover of `H` over to the roof-addition output.
///
/// A set whose edges at `a`, `b` all lie on one side moves to that side
/// (side 1 when it has none); a set mixing sides is replaced by its edges.
/// The two roof vertex sets are appended and nested sets are dropped.
pub fn transform_cover(h: &Graph, cover: &Cover, ab: VertexPair, dist: &Distribution) -> Cover {
    let lay = RoofAdditionLayout::new(h.n(), ab);
    let mut sets: Vec<Vec<usize>> = Vec::new();
    for s in &cover.sets {
        let sides: Vec<Side> = h
            .edges()
            .iter()
            .filter(|e| s.contains(&e.u) && s.contains(&e.v))
            .filter_map(|e| dist.get(e).copied())
            .collect();
        let all_two = !sides.is_empty() && sides.iter().all(|&x| x == Side::Two);
        let mixed = sides.contains(&Side::One) && sides.contains(&Side::Two);
        if mixed {
            for e in h.edges().iter().filter(|e| s.contains(&e.u) && s.contains(&e.v)) {
                let side = dist.get(e).copied().unwrap_or(Side::One);
                let p = e.map(|x| lay.place(x, side));
                sets.push(vec![p.u, p.v]);
            }
        } else {
            let side = if all_two { Side::Two } else { Side::One };
            let mut t: Vec<usize> = s.iter().map(|&x| lay.place(x, side)).collect();
            t.sort_unstable();
            sets.push(t);
        }
    }
    sets.push(vec![lay.a1, lay.b1, lay.u, lay.v, lay.c]);
    sets.push(vec![lay.a2, lay.b2, lay.u, lay.v, lay.c2]);
    let mut sets: Vec<Vec<usize>> = Cover::new(sets).sets;
    sets.sort();
    sets.dedup();
    let snapshot = sets.clone();
    sets.retain(|s| !snapshot.iter().any(|t| t.len() > s.len() && s.iter().all(|x| t.contains(x))));
    Cover::new(sets)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StartingConditions {
    pub two_thin_cover: bool,
    pub shared_part_independent: bool,
    /// `H` is independent and its rank equals the cover bound.
    pub rank_matches_bound: bool,
    pub nonedge_in_shared_part: bool,
    /// Every covering set containing `{a, b}` sends its edges at `a`, `b` to one side.
    pub distribution_respects_cover: bool,
    pub cut_graph_nucleation_free: bool,
    pub rank: usize,
    pub bound: Option<usize>,
}

impl StartingConditions {
    pub fn all_pass(&self) -> bool {
        self.two_thin_cover
            && self.shared_part_independent
            && self.rank_matches_bound
            && self.nonedge_in_shared_part
            && self.distribution_respects_cover
            && self.cut_graph_nucleation_free
    }
}

pub fn check_starting_conditions(h: &Graph, cover: &Cover, ab: VertexPair, dist: &Distribution) -> StartingConditions {
    check_starting_conditions_with(h, cover, ab, dist, &RankConfig::default())
}

pub fn check_starting_conditions_with(
    h: &Graph,
    cover: &Cover,
    ab: VertexPair,
    dist: &Distribution,
    cfg: &RankConfig,
) -> StartingConditions {
    let report = validate_cover(h, cover);
    let two_thin_cover = report.is_cover && report.is_2thin;
    let shared_graph = Graph::from_pairs_dedup(h.n(), report.shared.vertex_pairs()).expect("shared pairs in range");
    let shared_part_independent = rigidity::is_independent_with(&shared_graph, cfg);
    let rank = rigidity::generic_rank_with(h, cfg).rank;
    let bound = two_thin_cover.then(|| cover_bounds::cover_sum(h, cover, &report.shared, cfg));
    let rank_matches_bound = rank == h.edge_count() && bound == Some(rank);
    let nonedge_in_shared_part = !h.has_edge(ab.u, ab.v) && report.shared.non_edges().contains(&ab);

    let distribution_respects_cover = check_distribution(h, ab, dist).is_ok()
        && holders(cover, ab).into_iter().all(|i| {
            let s = &cover.sets[i];
            let sides: Vec<Side> = h
                .edges()
                .iter()
                .filter(|e| s.contains(&e.u) && s.contains(&e.v))
                .filter_map(|e| dist.get(e).copied())
                .collect();
            sides.windows(2).all(|w| w[0] == w[1])
        });

    let cut_graph_nucleation_free = cut_graph(h, ab, dist).is_ok_and(|g| {
        let s = rigidity::find_nucleations_with(&g, g.n(), cfg, rigidity::NUCLEATION_CANDIDATE_CAP);
        s.nucleations.is_empty() && s.status != rigidity::SearchStatus::CandidateCapReached
    });

    StartingConditions {
        two_thin_cover,
        shared_part_independent,
        rank_matches_bound,
        nonedge_in_shared_part,
        distribution_respects_cover,
        cut_graph_nucleation_free,
        rank,
        bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::ring_of_roofs;
    use crate::iso;

    #[test]
    fn ring_grows_by_two_roofs() {
        for k in [5, 7] {
            let r = ring_of_roofs(k).unwrap();
            let cover = Cover::new(r.bodies.clone());
            let ab = r.hinges[0];
            let dist = natural_distribution(&r.graph, &cover, ab).unwrap();
            let out = roof_addition(&r.graph, ab, &dist).unwrap();
            assert_eq!((out.graph.n(), out.graph.edge_count()), (3 * k + 6, 8 * k + 16));
            assert!(iso::are_isomorphic(&out.graph, &ring_of_roofs(k + 2).unwrap().graph));
            for p in &out.marked_nonedges {
                assert!(!out.graph.has_edge(p.u, p.v));
            }
            let c2 = transform_cover(&r.graph, &cover, ab, &dist);
            assert_eq!(c2.sets.len(), k + 2);
            let rep = validate_cover(&out.graph, &c2);
            assert!(rep.is_cover && rep.is_2thin, "{:?}", rep.problems);
            assert_eq!(rep.shared.pairs.len(), k + 2);
        }
    }

    #[test]
    fn rejects_edges_and_gaps() {
        let r = ring_of_roofs(7).unwrap();
        let cover = Cover::new(r.bodies.clone());
        let dist = natural_distribution(&r.graph, &cover, r.hinges[0]).unwrap();
        assert_eq!(
            roof_addition(&r.graph, VertexPair::new(0, 3), &dist),
            Err(ConstructionError::NotANonEdge(VertexPair::new(0, 3)))
        );
        let mut partial = dist.clone();
        let first = *partial.keys().next().unwrap();
        partial.remove(&first);
        assert_eq!(
            roof_addition(&r.graph, r.hinges[0], &partial),
            Err(ConstructionError::IncompleteDistribution(first))
        );
    }

    #[test]
    fn splitting_a_covering_set_is_flagged() {
        let r = ring_of_roofs(7).unwrap();
        let cover = Cover::new(r.bodies.clone());
        let ab = r.hinges[0];
        let mut dist = natural_distribution(&r.graph, &cover, ab).unwrap();
        let key = *dist.iter().find(|(_, s)| **s == Side::One).unwrap().0;
        dist.insert(key, Side::Two);
        let cond = check_starting_conditions(&r.graph, &cover, ab, &dist);
        assert!(!cond.distribution_respects_cover);
        assert!(cond.two_thin_cover);
    }
}
