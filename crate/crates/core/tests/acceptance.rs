//! End-to-end acceptance checks. Prints one `[PASS]`/`[FAIL]` line per
//! criterion and exits nonzero when any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rigiscope_core::constructions::{
    self, check_starting_conditions, henneberg1, henneberg2, k_sum, natural_distribution, roof_addition,
    transform_cover, vertex_split, Warning,
};
use rigiscope_core::cover_bounds::{certify_implied_by_sandwich, jj_upper_bound};
use rigiscope_core::flex_sign::{self, RoofKind};
use rigiscope_core::rigidity::{self, RankConfig, RationalCheck, SearchStatus};
use rigiscope_core::{iso, sparsity, Cover, Graph, VertexPair};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn confirmed() -> RankConfig {
    RankConfig::confirmed()
}

fn ac1_ring_ranks() -> Check {
    let start = Instant::now();
    for k in 6..=10 {
        let g = constructions::ring_of_roofs(k).map_err(|e| e.to_string())?.graph;
        let r = rigidity::generic_rank_with(&g, &confirmed());
        ensure!(r.rank == 8 * k, "R_{k}: rank {} != {}", r.rank, 8 * k);
        ensure!(r.rational_rank == Some(8 * k), "R_{k}: rational rank {:?}", r.rational_rank);
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(5), "took {t:?}");
    Ok(())
}

fn ac2_implied_hinges() -> Check {
    for k in 7..=10 {
        let r = constructions::ring_of_roofs(k).map_err(|e| e.to_string())?;
        let implied = rigidity::implied_nonedges_with(&r.graph, &confirmed()).implied;
        ensure!(implied == r.hinges, "R_{k}: implied {implied:?}");
        let bound = jj_upper_bound(&r.graph, &Cover::new(r.bodies.clone())).map_err(|e| e.to_string())?;
        ensure!(bound == 8 * k, "R_{k}: bound {bound}");
        let f = rigidity::random_integer_framework(&r.graph, 99, 0, rigidity::RATIONAL_COORD_BOUND);
        let internal = rigidity::motion_space(&f).dim() - 6;
        ensure!(internal == k - 6, "R_{k}: {internal} internal motions");
    }
    Ok(())
}

fn ac3_double_banana() -> Check {
    let d = constructions::double_banana();
    let g = &d.graph;
    let s = sparsity::maxwell_check(g);
    ensure!(s.is_sparse && s.is_tight, "not (3,6)-tight: {s:?}");
    let r = rigidity::generic_rank_with(g, &confirmed());
    ensure!(r.rank == 17 && r.consistent(), "rank {r:?}");
    ensure!(rigidity::is_circuit_with(g, &confirmed()), "not a circuit");
    let nuc = rigidity::find_nucleations(g, g.n());
    ensure!(nuc.nucleations == d.bodies && nuc.status == SearchStatus::Complete, "nucleations {nuc:?}");
    ensure!(rigidity::implied_nonedges(g).contains(&VertexPair::new(0, 1)), "{{a,b}} not implied");
    Ok(())
}

fn ac4_double_ring() -> Check {
    let start = Instant::now();
    let cfg = RankConfig { rational: RationalCheck::Always, ..RankConfig::default() };
    let r = constructions::double_ring(7, 7).map_err(|e| e.to_string())?;
    let g = &r.graph;
    ensure!((g.n(), g.edge_count()) == (40, 112), "counts {} {}", g.n(), g.edge_count());
    let nuc = rigidity::find_nucleations_with(g, 40, &cfg, rigidity::NUCLEATION_CANDIDATE_CAP);
    ensure!(nuc.nucleations.is_empty() && nuc.status == SearchStatus::Complete, "nucleations {nuc:?}");
    ensure!(!rigidity::is_independent_with(g, &cfg), "independent");
    ensure!(rigidity::is_circuit_with(g, &cfg), "not a circuit");
    let r7 = constructions::ring_of_roofs(7).map_err(|e| e.to_string())?;
    let braced = r7.graph.with_edges([r7.hinges[0]]);
    ensure!(rigidity::is_circuit_with(&braced, &cfg), "R_7 plus a hinge is not a circuit");
    // deletion oracle for the hypothesis
    let m = braced.edge_count();
    for e in braced.edges() {
        let rank = rigidity::generic_rank(&braced.without_edge(*e), 3, 7).rank;
        ensure!(rank == m - 1, "R_7 + hinge minus {e} has rank {rank}");
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(60), "took {t:?}");
    Ok(())
}

fn ac5_braced_double_ring() -> Check {
    let r = constructions::braced_double_ring(7, 7).map_err(|e| e.to_string())?;
    let g = &r.graph;
    ensure!((g.n(), g.edge_count()) == (40, 114), "counts {} {}", g.n(), g.edge_count());
    let s = sparsity::maxwell_check(g);
    ensure!(s.is_sparse && s.is_tight, "not tight: {s:?}");
    let m = sparsity::module_rigidity_approx(g);
    ensure!(m.module_rigid && m.nuclei_found.is_empty(), "module proxy {:?}", m.nuclei_found);
    let gap = sparsity::rigidity_gap_report_with(g, &confirmed());
    ensure!(gap.dof > 0 && gap.gap, "gap report {gap:?}");
    Ok(())
}

fn ac6_henneberg_pipeline() -> Check {
    for k in 6..=9 {
        let g = constructions::ring_of_tetrahedra(k).map_err(|e| e.to_string())?.graph;
        ensure!(rigidity::is_independent_with(&g, &confirmed()), "tetrahedra ring {k} dependent");
    }
    let t = constructions::ring_of_tetrahedra(7).map_err(|e| e.to_string())?;
    let mut g = t.graph.clone();
    for i in 0..7 {
        let (h1, h2) = (t.hinges[i], t.hinges[(i + 1) % 7]);
        g = henneberg2(&g, [h1.u, h1.v, h2.u, h2.v], h1).map_err(|e| e.to_string())?.graph;
        ensure!(rigidity::is_independent_with(&g, &confirmed()), "dependent after step {}", i + 1);
    }
    let r7 = constructions::ring_of_roofs(7).map_err(|e| e.to_string())?.graph;
    ensure!(iso::are_isomorphic(&g, &r7), "result not isomorphic to R_7");
    Ok(())
}

fn ac7_roof_addition() -> Check {
    let mut rng = common::rng(7);
    let mut done = 0;
    while done < 200 {
        let n = 8 + done % 9;
        let h = common::random_henneberg(n, 3, &mut rng);
        let non = h.non_edges();
        if non.is_empty() {
            continue;
        }
        ensure!(rigidity::is_independent(&h), "seed graph {done} dependent");
        let ab = non[done % non.len()];
        let dist = common::random_distribution(&h, ab, &mut rng);
        let out = roof_addition(&h, ab, &dist).map_err(|e| e.to_string())?;
        ensure!(
            rigidity::is_independent(&out.graph),
            "roof addition on graph {done} ({} v, {} e) at {ab} is dependent",
            h.n(),
            h.edge_count()
        );
        done += 1;
    }
    for k in [7, 8] {
        let r = constructions::ring_of_roofs(k).map_err(|e| e.to_string())?;
        let ab = r.hinges[0];
        let dist = natural_distribution(&r.graph, &Cover::new(r.bodies.clone()), ab).map_err(|e| e.to_string())?;
        let out = roof_addition(&r.graph, ab, &dist).map_err(|e| e.to_string())?;
        let next = constructions::ring_of_roofs(k + 2).map_err(|e| e.to_string())?;
        ensure!(iso::are_isomorphic(&out.graph, &next.graph), "R_{k} does not grow into R_{}", k + 2);
    }
    Ok(())
}

fn ac8_starting_conditions() -> Check {
    let r = constructions::ring_of_roofs(7).map_err(|e| e.to_string())?;
    let cover = Cover::new(r.bodies.clone());
    let ab = r.hinges[0];
    let dist = natural_distribution(&r.graph, &cover, ab).map_err(|e| e.to_string())?;
    let c = check_starting_conditions(&r.graph, &cover, ab, &dist);
    ensure!(c.all_pass(), "R_7 fails: {c:?}");

    let out = roof_addition(&r.graph, ab, &dist).map_err(|e| e.to_string())?;
    let cover2 = transform_cover(&r.graph, &cover, ab, &dist);
    let next_ab = out.marked_nonedges[2];
    let dist2 = natural_distribution(&out.graph, &cover2, next_ab).map_err(|e| e.to_string())?;
    let c2 = check_starting_conditions(&out.graph, &cover2, next_ab, &dist2);
    ensure!(c2.all_pass(), "output fails: {c2:?}");

    let cert = certify_implied_by_sandwich(&out.graph, &cover2).map_err(|e| e.to_string())?;
    ensure!(cert.valid && cert.agrees_with_direct_test, "sandwich invalid: {cert:?}");
    let certified: BTreeSet<VertexPair> = cert.implied_pairs.iter().copied().collect();
    for p in &out.marked_nonedges {
        ensure!(certified.contains(p), "{p} not certified");
    }
    Ok(())
}

fn ac9_flex_sign() -> Check {
    for (kind, want_equal) in [(RoofKind::Convex, false), (RoofKind::Pointed, true)] {
        let r = flex_sign::realize_roof(kind);
        let p = flex_sign::hinge_sign_pattern(&r.framework, &r.hinges);
        ensure!(p.len() == 1, "{kind:?}: {} internal motions", p.len());
        ensure!(p[0][0] != 0 && p[0][1] != 0, "{kind:?}: zero sign");
        ensure!((p[0][0] == p[0][1]) == want_equal, "{kind:?}: pattern {:?}", p[0]);
    }
    for k in [7, 8] {
        let c = flex_sign::flex_sign_certificate(k, rigidity::DEFAULT_SEED).map_err(|e| e.to_string())?;
        ensure!(c.applicable && c.holds, "certificate for k = {k} fails");
        ensure!(c.perturbations.len() == 10, "{} perturbations", c.perturbations.len());
    }
    Ok(())
}

fn ac10_standard_schemes() -> Check {
    let r = constructions::ring_of_roofs(7).map_err(|e| e.to_string())?;
    let g = &r.graph;
    for matching in [vec![(2, 2)], vec![(0, 0), (2, 2)]] {
        let s = k_sum(g, g, &matching).map_err(|e| e.to_string())?;
        let out = &s.graph;
        ensure!(rigidity::is_independent_with(out, &confirmed()), "{}-sum dependent", matching.len());
        let nuc = rigidity::find_nucleations(out, out.n());
        ensure!(nuc.nucleations.is_empty() && nuc.status == SearchStatus::Complete, "{}-sum has nuclei", matching.len());
        let implied: BTreeSet<VertexPair> = rigidity::implied_nonedges(out).into_iter().collect();
        for (side, map) in s.vertex_maps.iter().enumerate() {
            for h in &r.hinges {
                let p = h.map(|x| map[x]);
                ensure!(implied.contains(&p), "{}-sum: hinge {h} of summand {} not implied", matching.len(), side + 1);
            }
        }
    }
    let b = constructions::banana().graph;
    let three = k_sum(&b, &b, &[(2, 2), (3, 3), (4, 4)]).map_err(|e| e.to_string())?;
    ensure!(three.warnings.contains(&Warning::NucleationCreated), "3-sum not flagged: {:?}", three.warnings);

    let mut rng = common::rng(10);
    for i in 0..100 {
        let g = common::random_henneberg(6 + i % 8, 2, &mut rng);
        let w = loop {
            let mut vs: Vec<usize> = (0..g.n()).collect();
            rand::seq::SliceRandom::shuffle(&mut vs[..], &mut rng);
            let w = [vs[0], vs[1], vs[2]];
            if !g.triangle_in_k4(w) {
                break w;
            }
        };
        let h1 = henneberg1(&g, w).map_err(|e| e.to_string())?.graph;
        ensure!(rigidity::is_independent(&h1), "Henneberg-I instance {i} dependent");

        let u = (0..g.n()).max_by_key(|&x| (g.degree(x), x)).expect("nonempty");
        let nb = g.neighbors(u);
        let extra_len = (i % 3).min(nb.len());
        let (extra, rest) = nb.split_at(extra_len);
        let moved: Vec<usize> = rest.iter().copied().step_by(2).collect();
        let split = vertex_split(&g, u, &moved, extra).map_err(|e| e.to_string())?.graph;
        ensure!(rigidity::is_independent(&split), "vertex split instance {i} dependent");
    }
    Ok(())
}

fn ac11_oracles() -> Check {
    let mut rng = common::rng(11);
    for i in 0..500 {
        let n = 3 + i % 6;
        let p = [0.3, 0.5, 0.7, 0.9][i % 4];
        let g = common::random_graph(n, p, &mut rng);
        let fast = sparsity::maxwell_check(&g).is_sparse;
        ensure!(fast == common::brute_force_sparse(&g), "pebble game disagrees on graph {i}: {:?}", g.edges());
    }
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for k in 6..=10 {
        graphs.push((format!("R_{k}"), constructions::ring_of_roofs(k).map_err(|e| e.to_string())?.graph));
        if k <= 9 {
            graphs.push((format!("T_{k}"), constructions::ring_of_tetrahedra(k).map_err(|e| e.to_string())?.graph));
        }
    }
    graphs.push(("double banana".into(), constructions::double_banana().graph));
    graphs.push(("double ring".into(), constructions::double_ring(7, 7).map_err(|e| e.to_string())?.graph));
    graphs.push(("braced double ring".into(), constructions::braced_double_ring(7, 7).map_err(|e| e.to_string())?.graph));
    for (name, g) in &graphs {
        let field = rigidity::generic_rank(g, 3, rigidity::DEFAULT_SEED).rank;
        let exact = rigidity::rational_rank(g, rigidity::DEFAULT_SEED);
        ensure!(field == exact, "{name}: field {field}, rational {exact}");
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("AC1 ring of roofs rank 8k for k = 6..10", ac1_ring_ranks),
        ("AC2 implied hinges, cover bound and motion count for k = 7..10", ac2_implied_hinges),
        ("AC3 double banana", ac3_double_banana),
        ("AC4 double ring (7,7)", ac4_double_ring),
        ("AC5 braced double ring gap", ac5_braced_double_ring),
        ("AC6 Henneberg pipeline to R_7", ac6_henneberg_pipeline),
        ("AC7 roof addition keeps independence", ac7_roof_addition),
        ("AC8 starting conditions survive roof addition", ac8_starting_conditions),
        ("AC9 flex-sign certificates", ac9_flex_sign),
        ("AC10 standard schemes", ac10_standard_schemes),
        ("AC11 oracle equivalence", ac11_oracles),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("[PASS] {name} ({secs:.2}s)"),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {name} ({secs:.2}s): {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 11 criteria failed");
        std::process::exit(1);
    }
    println!("all 11 criteria passed");
}
