//! One-call analysis of a graph, as emitted by `rigiscope analyze`.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexPair};
use crate::rigidity::{self, GenericRankResult, RankConfig, SearchStatus};
use crate::sparsity::{self, SparsityVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub edge_count: usize,
    pub rank: GenericRankResult,
    pub dof: usize,
    pub independent: bool,
    pub rigid: bool,
    pub implied_nonedges: Vec<VertexPair>,
    pub nucleations: Vec<Vec<usize>>,
    pub nucleation_status: SearchStatus,
    pub nucleation_size_limit: usize,
    pub nucleation_free: bool,
    pub rigid_components: Vec<Vec<usize>>,
    pub is_circuit: bool,
    pub sparsity: SparsityVerdict,
    pub module_rigid: bool,
    /// Module-rigid yet generically flexible.
    pub gap: bool,
    pub config: RankConfig,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub rank: RankConfig,
    /// Largest nucleus size searched; `None` means `n`.
    pub nucleation_limit: Option<usize>,
}

pub fn analyze(g: &Graph, opts: &AnalysisOptions) -> AnalysisReport {
    let cfg = &opts.rank;
    let implied = rigidity::implied_nonedges_with(g, cfg);
    let rank = implied.rank;
    let dof = rigidity::dof_from_rank(g.n(), rank.rank);
    let limit = opts.nucleation_limit.unwrap_or(g.n());
    let search = rigidity::find_nucleations_with(g, limit, cfg, rigidity::NUCLEATION_CANDIDATE_CAP);
    let module = sparsity::module_rigidity_approx(g);
    AnalysisReport {
        n: g.n(),
        edge_count: g.edge_count(),
        dof,
        independent: rank.rank == g.edge_count(),
        rigid: dof == 0,
        implied_nonedges: implied.implied,
        nucleation_free: search.nucleations.is_empty() && search.status == SearchStatus::Complete,
        nucleations: search.nucleations,
        nucleation_status: search.status,
        nucleation_size_limit: limit,
        rigid_components: rigidity::rigid_components_with(g, cfg),
        is_circuit: rigidity::is_circuit_with(g, cfg),
        sparsity: sparsity::maxwell_check(g),
        gap: module.module_rigid && dof != 0,
        module_rigid: module.module_rigid,
        rank,
        config: *cfg,
    }
}

impl AnalysisReport {
    /// Short plain-text summary.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} vertices, {} edges\nrank {} ({}), dof {}\n",
            self.n,
            self.edge_count,
            self.rank.rank,
            if self.independent { "independent" } else { "dependent" },
            self.dof
        );
        if self.is_circuit {
            s.push_str("circuit\n");
        }
        let pairs: Vec<String> = self.implied_nonedges.iter().map(ToString::to_string).collect();
        s.push_str(&format!("implied non-edges ({}): {}\n", pairs.len(), pairs.join(" ")));
        if self.nucleation_free {
            s.push_str("nucleation-free\n");
        } else {
            s.push_str(&format!("nucleations: {:?} ({:?})\n", self.nucleations, self.nucleation_status));
        }
        s.push_str(&format!(
            "(3,6)-sparse {}, tight {}, module-rigid {}, gap {}\n",
            self.sparsity.is_sparse, self.sparsity.is_tight, self.module_rigid, self.gap
        ));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    #[test]
    fn ring_report() {
        let r = constructions::ring_of_roofs(7).unwrap();
        let a = analyze(&r.graph, &AnalysisOptions::default());
        assert_eq!((a.rank.rank, a.dof), (56, 1));
        assert!(a.independent && a.nucleation_free && !a.is_circuit);
        assert_eq!(a.implied_nonedges, r.marked_nonedges);
    }

    #[test]
    fn double_banana_report() {
        let d = constructions::double_banana();
        let a = analyze(&d.graph, &AnalysisOptions::default());
        assert!(!a.independent && a.is_circuit && a.sparsity.is_tight);
        assert_eq!(a.nucleations, d.bodies);
        assert_eq!(a.implied_nonedges, vec![VertexPair::new(0, 1)]);
    }
}
