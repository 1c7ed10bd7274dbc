mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rigiscope_core::constructions::{self, roof_addition};
use rigiscope_core::rigidity::{self, RankConfig};
use rigiscope_core::{analyze, sparsity, AnalysisOptions, Graph, GraphFile};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn henneberg_graphs_are_independent(seed in any::<u64>(), n in 5usize..18) {
        let g = common::random_henneberg(n, 0, &mut common::rng(seed));
        prop_assert!(rigidity::is_independent(&g));
        prop_assert_eq!(g.edge_count(), 3 * n - 6);
        prop_assert!(sparsity::maxwell_check(&g).is_tight);
    }

    #[test]
    fn roof_addition_adds_two_roofs(seed in any::<u64>(), n in 6usize..14) {
        let mut rng = common::rng(seed);
        let h = common::random_henneberg(n, 4, &mut rng);
        let non = h.non_edges();
        prop_assume!(!non.is_empty());
        let ab = *non.choose(&mut rng).unwrap();
        let dist = common::random_distribution(&h, ab, &mut rng);
        let out = roof_addition(&h, ab, &dist).unwrap();
        prop_assert_eq!(out.graph.n(), h.n() + 6);
        prop_assert_eq!(out.graph.edge_count(), h.edge_count() + 16);
        prop_assert!(rigidity::is_independent(&out.graph));
        for p in &out.marked_nonedges {
            prop_assert!(!out.graph.has_edge(p.u, p.v));
        }
    }

    #[test]
    fn rank_is_label_invariant(seed in any::<u64>(), n in 4usize..12) {
        let mut rng = common::rng(seed);
        let g = common::random_graph(n, 0.5, &mut rng);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let h = g.relabel(n, &perm).unwrap();
        prop_assert_eq!(rigidity::generic_rank(&g, 3, 1).rank, rigidity::generic_rank(&h, 3, 2).rank);
    }

    #[test]
    fn rank_does_not_depend_on_seed(seed in any::<u64>(), n in 4usize..10) {
        let g = common::random_graph(n, 0.6, &mut common::rng(seed));
        let a = rigidity::generic_rank_with(&g, &RankConfig::confirmed().with_seed(seed));
        let b = rigidity::generic_rank_with(&g, &RankConfig::confirmed().with_seed(seed ^ 1));
        prop_assert!(a.consistent() && b.consistent());
        prop_assert_eq!(a.rank, b.rank);
    }

    #[test]
    fn analysis_invariants(seed in any::<u64>(), n in 3usize..10) {
        let g = common::random_graph(n, 0.5, &mut common::rng(seed));
        let a = analyze(&g, &AnalysisOptions::default());
        prop_assert_eq!(a.independent, a.rank.rank == a.edge_count);
        prop_assert_eq!(a.dof, (3 * n - 6).saturating_sub(a.rank.rank));
        for p in &a.implied_nonedges {
            prop_assert!(!g.has_edge(p.u, p.v));
        }
        if a.is_circuit {
            prop_assert!(!a.independent);
        }
    }
}

#[test]
fn construction_files_roundtrip() {
    let results = [
        constructions::ring_of_roofs(7).unwrap(),
        constructions::double_banana(),
        constructions::braced_double_ring(7, 7).unwrap(),
    ];
    for r in results {
        let file = r.to_file();
        let text = serde_json::to_string(&file).unwrap();
        let back: GraphFile = serde_json::from_str(&text).unwrap();
        let g: Graph = back.to_graph().unwrap();
        assert_eq!(g, r.graph);
        assert_eq!(back.marked().unwrap(), r.marked_nonedges);
        assert_eq!(back.cover().unwrap().sets.len(), r.bodies.len());
    }
}
