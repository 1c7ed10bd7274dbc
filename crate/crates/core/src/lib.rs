//! Generic 3D bar-joint rigidity for graphs: exact and randomized rank,
//! implied non-edges, nucleation search, (3,6) pebble games, graph
//! constructions that preserve independence, cover bounds and flex-sign
//! certificates for rings of roofs.

pub mod constructions;
pub mod cover_bounds;
pub mod flex_sign;
pub mod graph;
pub mod iso;
pub mod linalg;
pub mod report;
pub mod rigidity;
pub mod sparsity;

pub use graph::{Cover, Graph, GraphError, GraphFile, PairStatus, VertexPair};
pub use linalg::{Fp, Matrix, Scalar, SubspaceBasis};
pub use report::{analyze, AnalysisOptions, AnalysisReport};
pub use rigidity::{Framework, GenericRankResult, RankConfig, RankMode, RationalCheck, SearchStatus};
pub use sparsity::SparsityVerdict;
