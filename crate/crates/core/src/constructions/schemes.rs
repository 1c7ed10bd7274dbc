use std::collections::BTreeSet;

use serde_json::json;

use super::{all_distinct, check_vertex, ConstructionError, ConstructionResult, Provenance, RingStructure, Warning};
use crate::graph::{Graph, VertexPair};

/// Glues `G2` onto `G1` by identifying `ne2 = {a2, b2}` with `ne1 = {a1, b1}`
/// (`a2 ↦ a1`, `b2 ↦ b1`, in the stored order `u < v`). Other vertices of
/// `G2` follow the vertices of `G1` in their original order.
pub fn graph_combination(
    g1: &Graph,
    ne1: VertexPair,
    g2: &Graph,
    ne2: VertexPair,
) -> Result<ConstructionResult, ConstructionError> {
    for (g, ne) in [(g1, ne1), (g2, ne2)] {
        check_vertex(g, ne.v)?;
        if g.has_edge(ne.u, ne.v) {
            return Err(ConstructionError::NotANonEdge(ne));
        }
    }
    let n1 = g1.n();
    let mut map2 = vec![0; g2.n()];
    let mut next = n1;
    for (x, slot) in map2.iter_mut().enumerate() {
        *slot = if x == ne2.u {
            ne1.u
        } else if x == ne2.v {
            ne1.v
        } else {
            next += 1;
            next - 1
        };
    }
    let edges = g1.edges().iter().copied().chain(g2.edges().iter().map(|e| e.map(|x| map2[x])));
    let graph = Graph::from_pairs_dedup(next, edges)?;
    Ok(ConstructionResult {
        vertex_maps: vec![(0..n1).collect(), map2],
        marked_nonedges: vec![ne1],
        ..ConstructionResult::plain(
            graph,
            Provenance::new("graph-combination", json!({ "nonedge1": ne1, "nonedge2": ne2 })),
        )
    })
}

/// New vertex `n` joined to three distinct vertices.
pub fn henneberg1(g: &Graph, w: [usize; 3]) -> Result<ConstructionResult, ConstructionError> {
    if !all_distinct(&w) || w.iter().any(|&x| x >= g.n()) {
        return Err(ConstructionError::BadVertices(format!("{w:?} must be three distinct vertices of G")));
    }
    let v = g.n();
    let graph = Graph::from_pairs_dedup(v + 1, g.edges().iter().copied().chain(w.iter().map(|&x| VertexPair::new(v, x))))?;
    Ok(ConstructionResult {
        vertex_maps: vec![(0..v).collect()],
        ..ConstructionResult::plain(graph, Provenance::new("henneberg1", json!({ "w": w })))
    })
}

/// Removes the edge `removed` (inside `w`) and joins a new vertex `n` to all of `w`.
pub fn henneberg2(g: &Graph, w: [usize; 4], removed: VertexPair) -> Result<ConstructionResult, ConstructionError> {
    if !all_distinct(&w) || w.iter().any(|&x| x >= g.n()) {
        return Err(ConstructionError::BadVertices(format!("{w:?} must be four distinct vertices of G")));
    }
    if !(w.contains(&removed.u) && w.contains(&removed.v) && g.has_edge(removed.u, removed.v)) {
        return Err(ConstructionError::EdgeNotInW(removed));
    }
    let v = g.n();
    let edges = g
        .edges()
        .iter()
        .copied()
        .filter(|&e| e != removed)
        .chain(w.iter().map(|&x| VertexPair::new(v, x)));
    let graph = Graph::from_pairs_dedup(v + 1, edges)?;
    Ok(ConstructionResult {
        vertex_maps: vec![(0..v).collect()],
        ..ConstructionResult::plain(graph, Provenance::new("henneberg2", json!({ "w": w, "removed": removed })))
    })
}

/// Splits `u`: a new vertex `v = n` takes over the edges from `u` to `moved`,
/// gains the edge `uv`, and is also joined to the `extra` neighbours of `u`
/// (at most two, disjoint from `moved`).
pub fn vertex_split(g: &Graph, u: usize, moved: &[usize], extra: &[usize]) -> Result<ConstructionResult, ConstructionError> {
    check_vertex(g, u)?;
    if extra.len() > 2 {
        return Err(ConstructionError::BadParameter(format!("vertex split on {} edges; at most 2 allowed", extra.len())));
    }
    let mut all: Vec<usize> = moved.to_vec();
    all.extend(extra);
    if !all_distinct(&all) {
        return Err(ConstructionError::BadVertices("moved and extra neighbours must be distinct".into()));
    }
    for &w in &all {
        if w >= g.n() || !g.has_edge(u, w) {
            return Err(ConstructionError::NotANeighbor { u, w });
        }
    }
    let v = g.n();
    let moved_pairs: BTreeSet<VertexPair> = moved.iter().map(|&w| VertexPair::new(u, w)).collect();
    let edges = g
        .edges()
        .iter()
        .copied()
        .filter(|e| !moved_pairs.contains(e))
        .chain(moved.iter().chain(extra).map(|&w| VertexPair::new(v, w)))
        .chain([VertexPair::new(u, v)]);
    let graph = Graph::from_pairs_dedup(v + 1, edges)?;
    Ok(ConstructionResult {
        vertex_maps: vec![(0..v).collect()],
        ..ConstructionResult::plain(
            graph,
            Provenance::new("vertex-split", json!({ "u": u, "moved": moved, "extra": extra })),
        )
    })
}

/// Identifies `matching[i].1` of `G2` with `matching[i].0` of `G1`; the matched
/// vertices must induce `K_k` on both sides, `k ∈ {1, 2, 3}`.
///
/// For `k = 3` a warning is attached for each side whose triangle lies in a
/// K4, and [`Warning::NucleationCreated`] when that happens on both sides.
pub fn k_sum(g1: &Graph, g2: &Graph, matching: &[(usize, usize)]) -> Result<ConstructionResult, ConstructionError> {
    let k = matching.len();
    if !(1..=3).contains(&k) {
        return Err(ConstructionError::BadParameter(format!("k-sum needs 1 to 3 matched vertices, got {k}")));
    }
    let s1: Vec<usize> = matching.iter().map(|m| m.0).collect();
    let s2: Vec<usize> = matching.iter().map(|m| m.1).collect();
    for (side, (g, s)) in [(g1, &s1), (g2, &s2)].into_iter().enumerate() {
        if !all_distinct(s) {
            return Err(ConstructionError::BadVertices(format!("repeated vertex in summand {}", side + 1)));
        }
        for &x in s.iter() {
            check_vertex(g, x)?;
        }
        if !g.is_clique(s) {
            return Err(ConstructionError::NotAClique(side + 1));
        }
    }
    let n1 = g1.n();
    let mut map2 = vec![usize::MAX; g2.n()];
    for &(a, b) in matching {
        map2[b] = a;
    }
    let mut next = n1;
    for slot in map2.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = next;
        next += 1;
    }
    let edges = g1.edges().iter().copied().chain(g2.edges().iter().map(|e| e.map(|x| map2[x])));
    let graph = Graph::from_pairs_dedup(next, edges)?;

    let mut warnings = Vec::new();
    if k == 3 {
        let in1 = g1.triangle_in_k4([s1[0], s1[1], s1[2]]);
        let in2 = g2.triangle_in_k4([s2[0], s2[1], s2[2]]);
        if in1 {
            warnings.push(Warning::TriangleInK4 { summand: 1 });
        }
        if in2 {
            warnings.push(Warning::TriangleInK4 { summand: 2 });
        }
        if in1 && in2 {
            warnings.push(Warning::NucleationCreated);
        }
    }
    Ok(ConstructionResult {
        vertex_maps: vec![(0..n1).collect(), map2],
        warnings,
        ..ConstructionResult::plain(graph, Provenance::new("k-sum", json!({ "k": k, "matching": matching })))
    })
}

/// For each body `i` adds a vertex joined to both endpoints of hinges `i` and
/// `i + 1`, then deletes every hinge edge. Output bodies gain their new vertex;
/// the hinges become marked non-edges.
pub fn henneberg_extender_ring(ring: &RingStructure) -> Result<ConstructionResult, ConstructionError> {
    ring.validate()?;
    let k = ring.len();
    let g = &ring.graph;
    for h in &ring.hinges {
        if !g.has_edge(h.u, h.v) {
            return Err(ConstructionError::NotARing(format!("hinge {h} is not an edge")));
        }
    }
    let n = g.n();
    let hinge_set: BTreeSet<VertexPair> = ring.hinges.iter().copied().collect();
    let mut edges: Vec<VertexPair> = g.edges().iter().copied().filter(|e| !hinge_set.contains(e)).collect();
    let mut bodies = Vec::with_capacity(k);
    for i in 0..k {
        let v = n + i;
        let (h1, h2) = (ring.hinges[i], ring.hinges[(i + 1) % k]);
        edges.extend([h1.u, h1.v, h2.u, h2.v].map(|x| VertexPair::new(v, x)));
        let mut body = ring.bodies[i].clone();
        body.push(v);
        body.sort_unstable();
        bodies.push(body);
    }
    let graph = Graph::from_pairs_dedup(n + k, edges)?;
    Ok(ConstructionResult {
        vertex_maps: vec![(0..n).collect()],
        marked_nonedges: ring.hinges.clone(),
        hinges: ring.hinges.clone(),
        bodies,
        ..ConstructionResult::plain(graph, Provenance::new("henneberg-extender-ring", json!({ "bodies": k })))
    })
}

/// `k` five-vertex bodies on hinges `{3i, 3i+1}` with apex `3i+2`: each body is
/// K5 minus the edge from its apex to the first vertex of its first hinge, and
/// hinges are edges.
pub fn ring_of_bananas(k: usize) -> Result<RingStructure, ConstructionError> {
    if k < 3 {
        return Err(ConstructionError::BadParameter(format!("a ring needs k ≥ 3, got {k}")));
    }
    let hinge = |i: usize| (3 * (i % k), 3 * (i % k) + 1);
    let mut edges = BTreeSet::new();
    let mut bodies = Vec::new();
    for i in 0..k {
        let (h1, h2, c) = (hinge(i), hinge(i + 1), 3 * i + 2);
        let body = [h1.0, h1.1, h2.0, h2.1, c];
        for x in 0..5 {
            for y in x + 1..5 {
                let p = VertexPair::new(body[x], body[y]);
                if p != VertexPair::new(c, h1.0) {
                    edges.insert(p);
                }
            }
        }
        let mut body = body.to_vec();
        body.sort_unstable();
        bodies.push(body);
    }
    let graph = Graph::from_pairs_dedup(3 * k, edges)?;
    Ok(RingStructure { graph, bodies, hinges: (0..k).map(|i| VertexPair::from(hinge(i))).collect() })
}
