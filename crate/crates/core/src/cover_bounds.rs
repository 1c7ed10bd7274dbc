//! Rank sandwich: an upper bound from a 2-thin cover meets the lower bound
//! `|E|` of an independent graph, which forces the shared non-edges of the
//! cover to be implied.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::RingStructure;
use crate::graph::{validate_cover, Cover, Graph, SharedPart, VertexPair};
use crate::rigidity::{self, RankConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverBoundError {
    #[error("not a cover of the graph: {0}")]
    NotACover(String),
    #[error("cover is not 2-thin")]
    NotTwoThin,
    #[error("the shared pairs of the cover form a dependent graph")]
    SharedPartDependent,
    #[error("body {0} is not rigid even with its hinges added")]
    BodyNotRigid(usize),
    #[error("malformed ring: {0}")]
    BadRing(String),
}

/// `Σ rank(G*[X_i]) − Σ (d(a,b) − 1)` with `G* = G ∪ S(𝒳)`, no preconditions checked.
pub fn cover_sum(g: &Graph, cover: &Cover, shared: &SharedPart, cfg: &RankConfig) -> usize {
    let star = g.with_edges(shared.vertex_pairs());
    let total: usize = cover
        .sets
        .iter()
        .map(|s| {
            let sub = star.induced(s).expect("cover vertices in range").graph;
            rigidity::generic_rank_with(&sub, cfg).rank
        })
        .sum();
    total - shared.overcount()
}

fn checked_shared(g: &Graph, cover: &Cover, cfg: &RankConfig) -> Result<SharedPart, CoverBoundError> {
    let report = validate_cover(g, cover);
    if !report.is_cover {
        return Err(CoverBoundError::NotACover(report.problems.join("; ")));
    }
    if !report.is_2thin {
        return Err(CoverBoundError::NotTwoThin);
    }
    let shared_graph = Graph::from_pairs_dedup(g.n(), report.shared.vertex_pairs()).expect("pairs in range");
    if !rigidity::is_independent_with(&shared_graph, cfg) {
        return Err(CoverBoundError::SharedPartDependent);
    }
    Ok(report.shared)
}

/// Upper bound on `rank(G ∪ S(𝒳))` from a 2-thin cover with independent shared part.
pub fn jj_upper_bound(g: &Graph, cover: &Cover) -> Result<usize, CoverBoundError> {
    jj_upper_bound_with(g, cover, &RankConfig::default())
}

pub fn jj_upper_bound_with(g: &Graph, cover: &Cover, cfg: &RankConfig) -> Result<usize, CoverBoundError> {
    let shared = checked_shared(g, cover, cfg)?;
    Ok(cover_sum(g, cover, &shared, cfg))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SandwichCertificate {
    pub graph: Graph,
    pub cover: Cover,
    pub bound: usize,
    pub rank: usize,
    pub edge_count: usize,
    /// `rank = |E| = bound`.
    pub valid: bool,
    /// Shared non-edges, certified implied when `valid`.
    pub implied_pairs: Vec<VertexPair>,
    /// Every certified pair is also reported by the direct implied-pair test.
    pub agrees_with_direct_test: bool,
}

pub fn certify_implied_by_sandwich(g: &Graph, cover: &Cover) -> Result<SandwichCertificate, CoverBoundError> {
    certify_implied_by_sandwich_with(g, cover, &RankConfig::default())
}

pub fn certify_implied_by_sandwich_with(
    g: &Graph,
    cover: &Cover,
    cfg: &RankConfig,
) -> Result<SandwichCertificate, CoverBoundError> {
    let shared = checked_shared(g, cover, cfg)?;
    let bound = cover_sum(g, cover, &shared, cfg);
    let direct = rigidity::implied_nonedges_with(g, cfg);
    let rank = direct.rank.rank;
    let valid = rank == g.edge_count() && rank == bound;
    let implied_pairs = if valid { shared.non_edges() } else { Vec::new() };
    let agrees_with_direct_test = implied_pairs.iter().all(|p| direct.implied.contains(p));
    Ok(SandwichCertificate {
        graph: g.clone(),
        cover: cover.clone(),
        bound,
        rank,
        edge_count: g.edge_count(),
        valid,
        implied_pairs,
        agrees_with_direct_test,
    })
}

/// `max(0, k − 6)` internal motions for a ring of `k` rigid bodies on hinges.
/// Each body, completed with the hinge pairs it contains, must be rigid.
pub fn body_hinge_lower_bound(ring: &RingStructure) -> Result<usize, CoverBoundError> {
    body_hinge_lower_bound_with(ring, &RankConfig::default())
}

pub fn body_hinge_lower_bound_with(ring: &RingStructure, cfg: &RankConfig) -> Result<usize, CoverBoundError> {
    ring.validate().map_err(|e| CoverBoundError::BadRing(e.to_string()))?;
    let completed = ring.graph.with_edges(ring.hinges.iter().copied());
    for (i, body) in ring.bodies.iter().enumerate() {
        let sub = completed.induced(body).expect("body vertices in range").graph;
        if !rigidity::is_rigid_with(&sub, cfg) {
            return Err(CoverBoundError::BodyNotRigid(i));
        }
    }
    Ok(ring.len().saturating_sub(6))
}
