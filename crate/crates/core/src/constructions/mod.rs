//! Graph families and inductive construction schemes.
//!
//! Every generator returns a [`ConstructionResult`]: the graph, an old → new
//! vertex map per input graph, the designated hinge pairs and, for ring-shaped
//! outputs, the body vertex sets in ring order.

mod families;
mod polyhedra;
mod roof_addition;
mod schemes;

pub use families::*;
pub use polyhedra::*;
pub use roof_addition::*;
pub use schemes::*;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, GraphFile, Graph, VertexPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("bad vertices: {0}")]
    BadVertices(String),
    #[error("pair {0} is not an edge induced by W")]
    EdgeNotInW(VertexPair),
    #[error("vertex {w} is not a neighbour of {u}")]
    NotANeighbor { u: usize, w: usize },
    #[error("matched vertices do not induce a complete graph in summand {0}")]
    NotAClique(usize),
    #[error("not a ring: {0}")]
    NotARing(String),
    #[error("pair {0} is an edge, expected a non-edge")]
    NotANonEdge(VertexPair),
    #[error("no side assigned to edge {0}")]
    IncompleteDistribution(VertexPair),
    #[error("no brace placement keeps the graph sparse and nucleus-free")]
    BraceSearchFailed,
    #[error("no hinge choice on the base graph passes")]
    NoValidHinges,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub scheme: String,
    pub params: serde_json::Value,
}

impl Provenance {
    pub fn new(scheme: &str, params: serde_json::Value) -> Self {
        Provenance { scheme: scheme.to_string(), params }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Warning {
    /// The shared triangle of a 3-sum lies in a K4 of this summand (1 or 2).
    TriangleInK4 { summand: usize },
    /// Triangle in a K4 on both sides: the sum contains a rigid nucleus.
    NucleationCreated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionResult {
    pub graph: Graph,
    /// One map per input graph, indexed by old vertex id.
    pub vertex_maps: Vec<Vec<usize>>,
    pub marked_nonedges: Vec<VertexPair>,
    /// Hinge pairs in ring order (edges or non-edges), empty for non-rings.
    pub hinges: Vec<VertexPair>,
    /// Body vertex sets; for rings, body `i` contains hinges `i` and `i + 1`.
    pub bodies: Vec<Vec<usize>>,
    pub warnings: Vec<Warning>,
    pub provenance: Provenance,
}

impl ConstructionResult {
    fn plain(graph: Graph, provenance: Provenance) -> Self {
        ConstructionResult {
            graph,
            vertex_maps: Vec::new(),
            marked_nonedges: Vec::new(),
            hinges: Vec::new(),
            bodies: Vec::new(),
            warnings: Vec::new(),
            provenance,
        }
    }

    pub fn ring(&self) -> Option<RingStructure> {
        (!self.hinges.is_empty() && self.hinges.len() == self.bodies.len()).then(|| RingStructure {
            graph: self.graph.clone(),
            bodies: self.bodies.clone(),
            hinges: self.hinges.clone(),
        })
    }

    pub fn to_file(&self) -> GraphFile {
        let mut f = GraphFile::from_graph(&self.graph);
        if !self.marked_nonedges.is_empty() {
            f.marked_nonedges = Some(self.marked_nonedges.iter().map(|p| [p.u, p.v]).collect());
        }
        if !self.bodies.is_empty() {
            f.cover = Some(self.bodies.clone());
        }
        let mut prov = serde_json::json!({
            "scheme": self.provenance.scheme,
            "params": self.provenance.params,
        });
        if !self.hinges.is_empty() {
            prov["hinges"] = serde_json::to_value(&self.hinges).expect("pairs serialise");
        }
        if !self.vertex_maps.is_empty() {
            prov["vertex_maps"] = serde_json::to_value(&self.vertex_maps).expect("maps serialise");
        }
        if !self.warnings.is_empty() {
            prov["warnings"] = serde_json::to_value(&self.warnings).expect("warnings serialise");
        }
        f.provenance = Some(prov);
        f
    }
}

/// A cyclic chain of bodies; hinge `i` is shared by bodies `i − 1` and `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingStructure {
    pub graph: Graph,
    pub bodies: Vec<Vec<usize>>,
    pub hinges: Vec<VertexPair>,
}

impl RingStructure {
    pub fn len(&self) -> usize {
        self.bodies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bodies.is_empty()
    }

    /// Checks the ring shape: equal counts, each hinge inside exactly bodies
    /// `i − 1` and `i`, and no other body.
    pub fn validate(&self) -> Result<(), ConstructionError> {
        let k = self.bodies.len();
        if k < 3 || self.hinges.len() != k {
            return Err(ConstructionError::NotARing(format!("{k} bodies and {} hinges", self.hinges.len())));
        }
        for (i, h) in self.hinges.iter().enumerate() {
            let holders: Vec<usize> = (0..k)
                .filter(|&j| self.bodies[j].contains(&h.u) && self.bodies[j].contains(&h.v))
                .collect();
            let expect = {
                let mut e = vec![(i + k - 1) % k, i];
                e.sort_unstable();
                e
            };
            if holders != expect {
                return Err(ConstructionError::NotARing(format!(
                    "hinge {h} lies in bodies {holders:?}, expected {expect:?}"
                )));
            }
        }
        Ok(())
    }
}

fn check_vertex(g: &Graph, x: usize) -> Result<(), ConstructionError> {
    if x >= g.n() {
        Err(ConstructionError::BadVertices(format!("vertex {x} not in a graph on {} vertices", g.n())))
    } else {
        Ok(())
    }
}

fn all_distinct(xs: &[usize]) -> bool {
    xs.iter().enumerate().all(|(i, x)| !xs[i + 1..].contains(x))
}
