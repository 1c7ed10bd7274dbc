use std::fs;
use std::path::{Path, PathBuf};

use rigiscope_core::constructions::{self, ConstructionResult, Distribution, Provenance, RingStructure, Side};
use rigiscope_core::cover_bounds;
use rigiscope_core::flex_sign;
use rigiscope_core::rigidity::DEFAULT_SEED;
use rigiscope_core::sparsity;
use rigiscope_core::{analyze, AnalysisOptions, Cover, Graph, GraphFile, RankConfig, RationalCheck, VertexPair};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::{Cli, Command, Family, Scheme};

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: Value,
    pub seed: u64,
    pub trials: usize,
    pub rational: bool,
    pub inputs: Vec<PathBuf>,
    pub output: Option<PathBuf>,
    pub version: &'static str,
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = RankConfig {
        trials: cli.trials.max(1),
        seed: cli.seed.unwrap_or(DEFAULT_SEED),
        rational: if cli.rational { RationalCheck::Always } else { RationalCheck::Never },
    };
    let (inputs, output) = match &cli.command {
        Command::Generate { family, k, k2, out } => {
            generate(*family, *k, *k2, out.as_deref(), cli.json)?;
            (vec![], out.clone())
        }
        Command::Analyze { input, nucleation_limit } => {
            let (_, g) = read_graph(input)?;
            let report = analyze(&g, &AnalysisOptions { rank: cfg, nucleation_limit: *nucleation_limit });
            emit(cli.json, &report, || report.summary())?;
            (vec![input.clone()], None)
        }
        Command::Bound { input, cover } => {
            let (file, g) = read_graph(input)?;
            let sets = match cover {
                Some(p) => read_json::<Cover>(p)?,
                None => file
                    .cover()
                    .ok_or_else(|| CliError::Parameter("no --cover given and the input stores no cover".into()))?,
            };
            let cert = cover_bounds::certify_implied_by_sandwich_with(&g, &sets, &cfg)?;
            emit(cli.json, &cert, || {
                format!(
                    "bound {}, rank {}, edges {}, valid {}\ncertified implied pairs ({}): {}\n",
                    cert.bound,
                    cert.rank,
                    cert.edge_count,
                    cert.valid,
                    cert.implied_pairs.len(),
                    join(&cert.implied_pairs)
                )
            })?;
            let mut inputs = vec![input.clone()];
            inputs.extend(cover.clone());
            (inputs, None)
        }
        Command::Flexsign { k } => {
            let cert = flex_sign::flex_sign_certificate(*k, cfg.seed)?;
            emit(cli.json, &cert, || {
                if !cert.applicable {
                    format!("k = {}: not applicable, the ring has {} generic degrees of freedom\n", cert.k, cert.dof)
                } else {
                    let check = cert.check.as_ref().expect("applicable certificates carry a check");
                    format!(
                        "k = {}: {}\nsign product {}, hinge derivatives zero {}, {} perturbations stable {}\n",
                        cert.k,
                        if cert.holds { "certificate holds" } else { "certificate fails" },
                        check.sign_product,
                        check.hinge_derivatives_zero,
                        cert.perturbations.len(),
                        cert.perturbations.iter().all(|p| p.patterns_unchanged)
                    )
                }
            })?;
            (vec![], None)
        }
        Command::Construct { scheme, input, input2, out, .. } => {
            let result = construct(*scheme, &cli.command)?;
            write_graph(&result.to_file(), out.as_deref(), cli.json, &result)?;
            let mut inputs = vec![input.clone()];
            inputs.extend(input2.clone());
            (inputs, out.clone())
        }
        Command::GapReport { input } => {
            let (_, g) = read_graph(input)?;
            let gap = sparsity::rigidity_gap_report_with(&g, &cfg);
            emit(cli.json, &gap, || {
                format!(
                    "module-rigid {}, generically rigid {}, dof {}, gap {}\n",
                    gap.module_rigid, gap.truly_rigid, gap.dof, gap.gap
                )
            })?;
            (vec![input.clone()], None)
        }
    };
    if let Some(path) = &cli.manifest {
        let manifest = RunManifest {
            command: serde_json::to_value(&cli.command).expect("command serialises"),
            seed: cfg.seed,
            trials: cfg.trials,
            rational: cli.rational,
            inputs,
            output,
            version: env!("CARGO_PKG_VERSION"),
        };
        write_text(path, &to_pretty(&manifest))?;
    }
    Ok(())
}

fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialise");
    s.push('\n');
    s
}

fn emit<T: Serialize>(json: bool, value: &T, human: impl FnOnce() -> String) -> Result<(), CliError> {
    if json {
        print!("{}", to_pretty(value));
    } else {
        print!("{}", human());
    }
    Ok(())
}

fn join(pairs: &[VertexPair]) -> String {
    pairs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse { path: path.to_path_buf(), msg: e.to_string() })
}

fn read_graph(path: &Path) -> Result<(GraphFile, Graph), CliError> {
    let file: GraphFile = read_json(path)?;
    let g = file.to_graph().map_err(|e| CliError::Parse { path: path.to_path_buf(), msg: e.to_string() })?;
    Ok((file, g))
}

/// Writes the graph file to `out`, or prints it when no path is given.
fn write_graph(file: &GraphFile, out: Option<&Path>, json: bool, r: &ConstructionResult) -> Result<(), CliError> {
    let text = to_pretty(file);
    match out {
        Some(path) => {
            write_text(path, &text)?;
            if json {
                print!("{}", to_pretty(&json!({ "path": path, "n": r.graph.n(), "edges": r.graph.edge_count() })));
            } else {
                println!("{}: {} vertices, {} edges", path.display(), r.graph.n(), r.graph.edge_count());
                for w in &r.warnings {
                    println!("warning: {w:?}");
                }
            }
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn generate(family: Family, k: usize, k2: Option<usize>, out: Option<&Path>, json: bool) -> Result<(), CliError> {
    let r = match family {
        Family::Roof => constructions::roof(),
        Family::Banana => constructions::banana(),
        Family::RingOfRoofs => constructions::ring_of_roofs(k)?,
        Family::RingOfTetrahedra => constructions::ring_of_tetrahedra(k)?,
        Family::RingOfBananas => ring_result(constructions::ring_of_bananas(k)?, "ring-of-bananas", json!({ "k": k })),
        Family::DoubleBanana => constructions::double_banana(),
        Family::DoubleRing => constructions::double_ring(k, k2.unwrap_or(k))?,
        Family::BracedDoubleRing => constructions::braced_double_ring(k, k2.unwrap_or(k))?,
        Family::Octahedron => plain(constructions::octahedron(), "octahedron"),
        Family::Icosahedron => plain(constructions::icosahedron(), "icosahedron"),
        Family::OctahedronRing => polyhedra_ring(&constructions::octahedron(), k)?,
        Family::IcosahedronRing => polyhedra_ring(&constructions::icosahedron(), k)?,
    };
    write_graph(&r.to_file(), out, json, &r)
}

fn plain(graph: Graph, name: &str) -> ConstructionResult {
    ConstructionResult {
        graph,
        vertex_maps: Vec::new(),
        marked_nonedges: Vec::new(),
        hinges: Vec::new(),
        bodies: Vec::new(),
        warnings: Vec::new(),
        provenance: Provenance::new(name, json!({})),
    }
}

fn ring_result(ring: RingStructure, name: &str, params: Value) -> ConstructionResult {
    ConstructionResult { hinges: ring.hinges, bodies: ring.bodies, provenance: Provenance::new(name, params), ..plain(ring.graph, name) }
}

fn polyhedra_ring(base: &Graph, k: usize) -> Result<ConstructionResult, CliError> {
    let search = constructions::search_hinge_pairs(base, k)?;
    let choice = search.passing()[0].clone();
    let modified = base.without_edge(VertexPair::from(choice.dropped));
    let mut r = constructions::ring_of_polyhedra(&modified, choice.dropped, choice.nonedge, k)?;
    r.provenance.params["dropped_edge"] = json!(choice.dropped);
    Ok(r)
}

fn pair_arg(v: &[usize], name: &str) -> Result<VertexPair, CliError> {
    match v {
        [a, b] if a != b => Ok(VertexPair::new(*a, *b)),
        _ => Err(CliError::Parameter(format!("--{name} takes two distinct vertices `a,b`"))),
    }
}

fn parse_edge(s: &str) -> Result<VertexPair, CliError> {
    let bad = || CliError::Parameter(format!("cannot read edge `{s}`, expected `x-y`"));
    let (a, b) = s.split_once('-').ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    VertexPair::try_new(a, b).ok_or_else(bad)
}

fn parse_match(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Parameter(format!("cannot read match `{s}`, expected `x:y`"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn second_input(input2: &Option<PathBuf>) -> Result<Graph, CliError> {
    let p = input2.as_ref().ok_or_else(|| CliError::Parameter("this scheme needs --input2".into()))?;
    Ok(read_graph(p)?.1)
}

fn construct(scheme: Scheme, cmd: &Command) -> Result<ConstructionResult, CliError> {
    let Command::Construct { input, input2, w, pair, pair2, u, moved, extra, matching, side2, .. } = cmd else {
        unreachable!("construct called with another command")
    };
    let (file, g) = read_graph(input)?;
    let r = match scheme {
        Scheme::Henneberg1 => {
            let w: [usize; 3] = w.as_slice().try_into().map_err(|_| CliError::Parameter("--w takes 3 vertices".into()))?;
            constructions::henneberg1(&g, w)?
        }
        Scheme::Henneberg2 => {
            let w: [usize; 4] = w.as_slice().try_into().map_err(|_| CliError::Parameter("--w takes 4 vertices".into()))?;
            constructions::henneberg2(&g, w, pair_arg(pair, "pair")?)?
        }
        Scheme::VertexSplit => {
            let u = u.ok_or_else(|| CliError::Parameter("vertex-split needs --u".into()))?;
            constructions::vertex_split(&g, u, moved, extra)?
        }
        Scheme::KSum => {
            let g2 = second_input(input2)?;
            let m = matching.iter().map(|s| parse_match(s)).collect::<Result<Vec<_>, _>>()?;
            constructions::k_sum(&g, &g2, &m)?
        }
        Scheme::RoofAddition => {
            let ab = pair_arg(pair, "pair")?;
            let cover = file.cover();
            let dist: Distribution = match (&cover, side2.is_empty()) {
                (Some(c), true) => constructions::natural_distribution(&g, c, ab)?,
                _ => {
                    let two = side2.iter().map(|s| parse_edge(s)).collect::<Result<Vec<_>, _>>()?;
                    g.edges()
                        .iter()
                        .filter(|e| e.contains(ab.u) || e.contains(ab.v))
                        .map(|e| (*e, if two.contains(e) { Side::Two } else { Side::One }))
                        .collect()
                }
            };
            let mut r = constructions::roof_addition(&g, ab, &dist)?;
            if let Some(c) = cover {
                r.bodies = constructions::transform_cover(&g, &c, ab, &dist).sets;
            }
            r
        }
        Scheme::GraphCombination => {
            let g2 = second_input(input2)?;
            constructions::graph_combination(&g, pair_arg(pair, "pair")?, &g2, pair_arg(pair2, "pair2")?)?
        }
        Scheme::HennebergExtender => {
            let bodies = file.cover.clone().ok_or_else(|| CliError::Parameter("the input stores no bodies (cover)".into()))?;
            let hinges: Vec<VertexPair> = file
                .provenance
                .as_ref()
                .and_then(|p| p.get("hinges"))
                .and_then(|h| serde_json::from_value(h.clone()).ok())
                .ok_or_else(|| CliError::Parameter("the input stores no ring hinges".into()))?;
            constructions::henneberg_extender_ring(&RingStructure { graph: g, bodies, hinges })?
        }
    };
    Ok(r)
}
