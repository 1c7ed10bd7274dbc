//! Canonical simple graphs, vertex pairs and covers.
//!
//! A [`Graph`] is immutable once built. Its edge list is kept sorted so that
//! two graphs on the same labelled vertex set compare equal exactly when they
//! have the same edges. Isomorphism is a separate question, see [`crate::iso`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) listed more than once")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("{0} labels given for {1} vertices")]
    LabelCount(usize, usize),
}

/// An unordered pair of distinct vertices, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct VertexPair {
    pub u: usize,
    pub v: usize,
}

impl VertexPair {
    /// Normalises the order. Panics on `a == b`.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "a vertex pair needs two distinct vertices");
        if a < b {
            VertexPair { u: a, v: b }
        } else {
            VertexPair { u: b, v: a }
        }
    }

    pub fn try_new(a: usize, b: usize) -> Option<Self> {
        (a != b).then(|| Self::new(a, b))
    }

    pub fn contains(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    pub fn other(&self, x: usize) -> Option<usize> {
        if self.u == x {
            Some(self.v)
        } else if self.v == x {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn map(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::new(f(self.u), f(self.v))
    }
}

impl From<VertexPair> for [usize; 2] {
    fn from(p: VertexPair) -> Self {
        [p.u, p.v]
    }
}

impl TryFrom<[usize; 2]> for VertexPair {
    type Error = GraphError;
    fn try_from(p: [usize; 2]) -> Result<Self, GraphError> {
        VertexPair::try_new(p[0], p[1]).ok_or(GraphError::SelfLoop(p[0]))
    }
}

impl From<(usize, usize)> for VertexPair {
    fn from((a, b): (usize, usize)) -> Self {
        VertexPair::new(a, b)
    }
}

impl fmt::Display for VertexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.u, self.v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairStatus {
    Edge,
    NonEdge,
}

/// Finite simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<VertexPair>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a canonical graph, rejecting loops, duplicates and out-of-range ids.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut out = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::OutOfRange { vertex: x, n });
                }
            }
            out.push(VertexPair::new(a, b));
        }
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].u, w[0].v));
        }
        Ok(Graph { n, edges: out, labels: None })
    }

    /// Like [`Graph::new`] but silently merges repeated pairs.
    pub fn from_pairs_dedup(n: usize, edges: impl IntoIterator<Item = VertexPair>) -> Result<Self, GraphError> {
        let set: BTreeSet<VertexPair> = edges.into_iter().collect();
        Graph::new(n, set.into_iter().map(|p| (p.u, p.v)))
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), labels: None }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push(VertexPair { u, v });
            }
        }
        Graph { n, edges, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount(labels.len(), self.n));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[VertexPair] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.edges.binary_search(&VertexPair::new(a, b)).is_ok()
    }

    pub fn pair_status(&self, p: VertexPair) -> PairStatus {
        if self.has_edge(p.u, p.v) {
            PairStatus::Edge
        } else {
            PairStatus::NonEdge
        }
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&VertexPair::new(a, b)).ok()
    }

    /// Sorted neighbour lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn adjacency_matrix(&self) -> Vec<Vec<bool>> {
        let mut m = vec![vec![false; self.n]; self.n];
        for e in &self.edges {
            m[e.u][e.v] = true;
            m[e.v][e.u] = true;
        }
        m
    }

    pub fn neighbors(&self, x: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.edges.iter().filter_map(|e| e.other(x)).collect();
        out.sort_unstable();
        out
    }

    pub fn degree(&self, x: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(x)).count()
    }

    /// All pairs that are not edges, in lexicographic order.
    pub fn non_edges(&self) -> Vec<VertexPair> {
        let adj = self.adjacency_matrix();
        (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| VertexPair { u, v }))
            .filter(|p| !adj[p.u][p.v])
            .collect()
    }

    /// Returns a new graph with the given pairs added (existing edges are ignored).
    pub fn with_edges(&self, extra: impl IntoIterator<Item = VertexPair>) -> Graph {
        let mut set: BTreeSet<VertexPair> = self.edges.iter().copied().collect();
        for p in extra {
            assert!(p.v < self.n, "pair {p} out of range");
            set.insert(p);
        }
        Graph { n: self.n, edges: set.into_iter().collect(), labels: self.labels.clone() }
    }

    pub fn without_edge(&self, p: VertexPair) -> Graph {
        Graph {
            n: self.n,
            edges: self.edges.iter().copied().filter(|e| *e != p).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Subgraph induced by `vertices`, relabelled `0..k` in the order given
    /// after sorting and deduplication.
    pub fn induced(&self, vertices: &[usize]) -> Result<Induced, GraphError> {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&x| x >= self.n) {
            return Err(GraphError::OutOfRange { vertex: bad, n: self.n });
        }
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &x) in keep.iter().enumerate() {
            new_id[x] = i;
        }
        let edges: Vec<VertexPair> = self
            .edges
            .iter()
            .filter(|e| new_id[e.u] != usize::MAX && new_id[e.v] != usize::MAX)
            .map(|e| VertexPair::new(new_id[e.u], new_id[e.v]))
            .collect();
        let mut edges = edges;
        edges.sort_unstable();
        let labels = self
            .labels
            .as_ref()
            .map(|l| keep.iter().map(|&x| l[x].clone()).collect());
        Ok(Induced { graph: Graph { n: keep.len(), edges, labels }, vertices: keep })
    }

    /// Number of edges with both ends in `set`.
    pub fn induced_edge_count(&self, set: &[usize]) -> usize {
        let mut mark = vec![false; self.n];
        for &x in set {
            mark[x] = true;
        }
        self.edges.iter().filter(|e| mark[e.u] && mark[e.v]).count()
    }

    /// Relabels vertices through `map` (old id → new id) into a graph on `n` vertices.
    /// Pairs that collapse onto one vertex are rejected; repeated pairs merge.
    pub fn relabel(&self, n: usize, map: &[usize]) -> Result<Graph, GraphError> {
        let mut set = BTreeSet::new();
        for e in &self.edges {
            let (a, b) = (map[e.u], map[e.v]);
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if a >= n || b >= n {
                return Err(GraphError::OutOfRange { vertex: a.max(b), n });
            }
            set.insert(VertexPair::new(a, b));
        }
        Ok(Graph { n, edges: set.into_iter().collect(), labels: None })
    }

    /// Vertex sets of the connected components, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True if `set` induces a complete graph.
    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| a != b && self.has_edge(a, b)))
    }

    /// Does the triangle `tri` lie in some K4 of this graph?
    pub fn triangle_in_k4(&self, tri: [usize; 3]) -> bool {
        if !self.is_clique(&tri) {
            return false;
        }
        (0..self.n).any(|w| !tri.contains(&w) && tri.iter().all(|&t| self.has_edge(t, w)))
    }
}

/// Result of [`Graph::induced`]: the subgraph and its new → old vertex map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Induced {
    pub graph: Graph,
    pub vertices: Vec<usize>,
}

/// A collection of vertex subsets used for thin-cover rank bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cover {
    pub sets: Vec<Vec<usize>>,
}

impl Cover {
    pub fn new(sets: Vec<Vec<usize>>) -> Self {
        let sets = sets
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        Cover { sets }
    }
}

/// Pairs that arise as a two-vertex intersection of cover sets, with
/// multiplicity = number of cover sets containing the pair.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharedPart {
    pub pairs: Vec<SharedPair>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharedPair {
    pub pair: VertexPair,
    pub status: PairStatus,
    pub multiplicity: usize,
}

impl SharedPart {
    pub fn vertex_pairs(&self) -> Vec<VertexPair> {
        self.pairs.iter().map(|p| p.pair).collect()
    }

    pub fn non_edges(&self) -> Vec<VertexPair> {
        self.pairs
            .iter()
            .filter(|p| p.status == PairStatus::NonEdge)
            .map(|p| p.pair)
            .collect()
    }

    /// Σ (d(a,b) − 1) over the shared pairs.
    pub fn overcount(&self) -> usize {
        self.pairs.iter().map(|p| p.multiplicity - 1).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub is_cover: bool,
    pub is_2thin: bool,
    pub shared: SharedPart,
    /// Human-readable reasons when `is_cover` or `is_2thin` fail.
    pub problems: Vec<String>,
}

/// Checks that `cover` is a cover of `g` (incomparable sets of size ≥ 2 whose
/// induced edges exhaust `E`) and whether it is 2-thin, and computes its
/// shared part. The verdict does not depend on the order of the sets.
pub fn validate_cover(g: &Graph, cover: &Cover) -> CoverReport {
    let mut problems = Vec::new();
    let sets: Vec<BTreeSet<usize>> = cover.sets.iter().map(|s| s.iter().copied().collect()).collect();

    for (i, s) in sets.iter().enumerate() {
        if s.len() < 2 {
            problems.push(format!("set {i} has fewer than two vertices"));
        }
        if let Some(&x) = s.iter().find(|&&x| x >= g.n()) {
            problems.push(format!("set {i} contains out-of-range vertex {x}"));
        }
    }
    for i in 0..sets.len() {
        for j in 0..sets.len() {
            if i != j && sets[i].is_subset(&sets[j]) && (sets[i] != sets[j] || i < j) {
                problems.push(format!("set {i} is contained in set {j}"));
            }
        }
    }
    let covered = |e: &VertexPair| sets.iter().any(|s| s.contains(&e.u) && s.contains(&e.v));
    let uncovered: Vec<_> = g.edges().iter().filter(|e| !covered(e)).collect();
    if !uncovered.is_empty() {
        problems.push(format!("{} edges not induced by any set, first {}", uncovered.len(), uncovered[0]));
    }
    let is_cover = problems.is_empty();

    let mut is_2thin = true;
    let mut shared: BTreeSet<VertexPair> = BTreeSet::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let common: Vec<usize> = sets[i].intersection(&sets[j]).copied().collect();
            if common.len() > 2 {
                is_2thin = false;
                problems.push(format!("sets {i} and {j} share {} vertices", common.len()));
            } else if common.len() == 2 {
                shared.insert(VertexPair::new(common[0], common[1]));
            }
        }
    }

    let mut mult: BTreeMap<VertexPair, usize> = BTreeMap::new();
    for p in &shared {
        let d = sets.iter().filter(|s| s.contains(&p.u) && s.contains(&p.v)).count();
        mult.insert(*p, d);
    }
    let pairs = mult
        .into_iter()
        .map(|(pair, multiplicity)| SharedPair { pair, status: g.pair_status(pair), multiplicity })
        .collect();

    CoverReport { is_cover, is_2thin, shared: SharedPart { pairs }, problems }
}

/// Exact rational coordinate written as `"p/q"` or `"p"`.
pub type CoordText = [String; 3];

/// On-disk graph format. Field names are fixed; edges are written sorted.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<CoordText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked_nonedges: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<serde_json::Value>,
}

impl GraphFile {
    pub fn from_graph(g: &Graph) -> Self {
        GraphFile {
            n: g.n(),
            edges: g.edges().iter().map(|e| [e.u, e.v]).collect(),
            labels: g.labels().map(|l| l.to_vec()),
            ..Default::default()
        }
    }

    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        let g = Graph::new(self.n, self.edges.iter().map(|e| (e[0], e[1])))?;
        match &self.labels {
            Some(l) => g.with_labels(l.clone()),
            None => Ok(g),
        }
    }

    pub fn marked(&self) -> Result<Vec<VertexPair>, GraphError> {
        self.marked_nonedges
            .iter()
            .flatten()
            .map(|&p| VertexPair::try_from(p))
            .collect()
    }

    pub fn cover(&self) -> Option<Cover> {
        self.cover.clone().map(Cover::new)
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphFile::from_graph(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let file = GraphFile::deserialize(d)?;
        file.to_graph().map_err(serde::de::Error::custom)
    }
}
