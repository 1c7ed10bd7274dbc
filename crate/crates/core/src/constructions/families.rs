use serde_json::json;

use super::{graph_combination, ConstructionError, ConstructionResult, Provenance};
use crate::graph::{Graph, VertexPair};
use crate::sparsity;

/// The eight edges of a roof on hinges `h1`, `h2` with the given apex.
pub fn roof_edges(h1: (usize, usize), h2: (usize, usize), apex: usize) -> [(usize, usize); 8] {
    [
        (h1.0, h2.0),
        (h1.0, h2.1),
        (h1.1, h2.0),
        (h1.1, h2.1),
        (apex, h1.0),
        (apex, h1.1),
        (apex, h2.0),
        (apex, h2.1),
    ]
}

/// K5 minus the disjoint pairs {0,1} and {2,3}; vertex 4 is the apex.
pub fn roof() -> ConstructionResult {
    let graph = Graph::new(5, roof_edges((0, 1), (2, 3), 4)).expect("roof is simple");
    let hinges = vec![VertexPair::new(0, 1), VertexPair::new(2, 3)];
    ConstructionResult {
        marked_nonedges: hinges.clone(),
        hinges,
        bodies: vec![(0..5).collect()],
        ..ConstructionResult::plain(graph, Provenance::new("roof", json!({})))
    }
}

/// K5 minus the pair {0,1}.
pub fn banana() -> ConstructionResult {
    let graph = Graph::complete(5).without_edge(VertexPair::new(0, 1));
    ConstructionResult {
        marked_nonedges: vec![VertexPair::new(0, 1)],
        bodies: vec![(0..5).collect()],
        ..ConstructionResult::plain(graph, Provenance::new("banana", json!({})))
    }
}

/// `k` roofs closed into a ring. Hinge `i` is `{3i, 3i+1}` and roof `i` has
/// apex `3i+2` over hinges `i` and `i+1`.
pub fn ring_of_roofs(k: usize) -> Result<ConstructionResult, ConstructionError> {
    if k < 3 {
        return Err(ConstructionError::BadParameter(format!("a ring of roofs needs k ≥ 3, got {k}")));
    }
    let hinge = |i: usize| (3 * (i % k), 3 * (i % k) + 1);
    let mut edges = Vec::with_capacity(8 * k);
    let mut bodies = Vec::with_capacity(k);
    for i in 0..k {
        let (h1, h2, apex) = (hinge(i), hinge(i + 1), 3 * i + 2);
        edges.extend(roof_edges(h1, h2, apex));
        let mut body = vec![h1.0, h1.1, h2.0, h2.1, apex];
        body.sort_unstable();
        bodies.push(body);
    }
    let graph = Graph::new(3 * k, edges)?;
    let hinges: Vec<VertexPair> = (0..k).map(|i| VertexPair::from(hinge(i))).collect();
    Ok(ConstructionResult {
        marked_nonedges: hinges.clone(),
        hinges,
        bodies,
        ..ConstructionResult::plain(graph, Provenance::new("ring-of-roofs", json!({ "k": k })))
    })
}

/// `k` tetrahedra closed into a ring; tetrahedron `i` is `{2i, 2i+1, 2i+2, 2i+3}`
/// and consecutive ones share the edge `{2i, 2i+1}`.
pub fn ring_of_tetrahedra(k: usize) -> Result<ConstructionResult, ConstructionError> {
    if k < 3 {
        return Err(ConstructionError::BadParameter(format!("a ring of tetrahedra needs k ≥ 3, got {k}")));
    }
    let n = 2 * k;
    let hinge = |i: usize| (2 * (i % k), 2 * (i % k) + 1);
    let mut edges = std::collections::BTreeSet::new();
    let mut bodies = Vec::with_capacity(k);
    for i in 0..k {
        let (a, b) = hinge(i);
        let (c, d) = hinge(i + 1);
        let body = [a, b, c, d];
        for x in 0..4 {
            for y in x + 1..4 {
                edges.insert(VertexPair::new(body[x], body[y]));
            }
        }
        let mut body = body.to_vec();
        body.sort_unstable();
        bodies.push(body);
    }
    let graph = Graph::new(n, edges.into_iter().map(|p| (p.u, p.v)))?;
    Ok(ConstructionResult {
        hinges: (0..k).map(|i| VertexPair::from(hinge(i))).collect(),
        bodies,
        ..ConstructionResult::plain(graph, Provenance::new("ring-of-tetrahedra", json!({ "k": k })))
    })
}

/// Two bananas glued along their missing pair; bananas `{0..4}` and `{0,1,5,6,7}`.
pub fn double_banana() -> ConstructionResult {
    let b = banana();
    let mut r = graph_combination(&b.graph, VertexPair::new(0, 1), &b.graph, VertexPair::new(0, 1))
        .expect("banana pair {0,1} is a non-edge");
    r.bodies = vec![vec![0, 1, 2, 3, 4], vec![0, 1, 5, 6, 7]];
    r.provenance = Provenance::new("double-banana", json!({}));
    r
}

/// Rings of `k1` and `k2` roofs glued along hinge 0 of each.
pub fn double_ring(k1: usize, k2: usize) -> Result<ConstructionResult, ConstructionError> {
    if k1 < 7 || k2 < 7 {
        return Err(ConstructionError::BadParameter(format!("double ring needs k1, k2 ≥ 7, got ({k1}, {k2})")));
    }
    let r1 = ring_of_roofs(k1)?;
    let r2 = ring_of_roofs(k2)?;
    let mut r = graph_combination(&r1.graph, r1.hinges[0], &r2.graph, r2.hinges[0])?;
    let m2 = &r.vertex_maps[1];
    let mut marked: Vec<VertexPair> = r1.hinges.clone();
    marked.extend(r2.hinges.iter().skip(1).map(|h| h.map(|x| m2[x])));
    let mut bodies = r1.bodies.clone();
    bodies.extend(r2.bodies.iter().map(|b| {
        let mut b: Vec<usize> = b.iter().map(|&x| m2[x]).collect();
        b.sort_unstable();
        b
    }));
    r.marked_nonedges = marked;
    r.bodies = bodies;
    r.provenance = Provenance::new("double-ring", json!({ "k1": k1, "k2": k2 }));
    Ok(r)
}

/// Apex vertex ids of the two rings inside [`double_ring`]`(k1, k2)`.
pub fn double_ring_apexes(k1: usize, k2: usize) -> (Vec<usize>, Vec<usize>) {
    let n1 = 3 * k1;
    let first = (0..k1).map(|i| 3 * i + 2).collect();
    // second ring: old id 3i+2 ↦ n1 + (3i+2) − 2 since ids 0, 1 were merged
    let second = (0..k2).map(|i| n1 + 3 * i).collect();
    (first, second)
}

/// [`double_ring`] plus two bars between apexes of different rings.
///
/// Candidate bars are tried in lexicographic order of (ring-1 apex, ring-2
/// apex); a bar is kept when the graph stays (3,6)-sparse and no proper tight
/// subgraph on five or more vertices appears. The first two kept bars are used.
pub fn braced_double_ring(k1: usize, k2: usize) -> Result<ConstructionResult, ConstructionError> {
    let mut r = double_ring(k1, k2)?;
    let (first, second) = double_ring_apexes(k1, k2);
    let mut g = r.graph.clone();
    let mut braces = Vec::new();
    'search: for &x in &first {
        for &y in &second {
            if braces.len() == 2 {
                break 'search;
            }
            if g.has_edge(x, y) || braces.iter().any(|b: &VertexPair| b.contains(x) || b.contains(y)) {
                continue;
            }
            let candidate = g.with_edges([VertexPair::new(x, y)]);
            if sparsity::maxwell_check(&candidate).is_sparse && sparsity::proper_tight_sets(&candidate).is_empty() {
                g = candidate;
                braces.push(VertexPair::new(x, y));
            }
        }
    }
    if braces.len() < 2 {
        return Err(ConstructionError::BraceSearchFailed);
    }
    r.graph = g;
    r.provenance = Provenance::new(
        "braced-double-ring",
        json!({ "k1": k1, "k2": k2, "braces": braces }),
    );
    Ok(r)
}

/// K_{2,2,2}: K6 minus the perfect matching {0,1}, {2,3}, {4,5}.
pub fn octahedron() -> Graph {
    Graph::complete(6)
        .without_edge(VertexPair::new(0, 1))
        .without_edge(VertexPair::new(2, 3))
        .without_edge(VertexPair::new(4, 5))
}

/// Icosahedron: poles 0 and 11, upper ring 1..=5, lower ring 6..=10.
pub fn icosahedron() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        let up = 1 + i;
        let up_next = 1 + (i + 1) % 5;
        let lo = 6 + i;
        let lo_next = 6 + (i + 1) % 5;
        e.extend([(0, up), (up, up_next), (11, lo), (lo, lo_next), (up, lo), (up, lo_next)]);
    }
    Graph::new(12, e).expect("icosahedron is simple")
}
