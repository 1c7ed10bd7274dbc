use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

mod commands;
mod error;

#[derive(Debug, Parser)]
#[command(name = "rigiscope", version, about = "Generic 3D rigidity analysis for bar-and-joint graphs")]
pub struct Cli {
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for every randomized step.
    #[arg(long, global = true, env = "RIGISCOPE_SEED")]
    pub seed: Option<u64>,

    /// Field trials per rank evaluation.
    #[arg(long, global = true, default_value_t = 3)]
    pub trials: usize,

    /// Also take one exact rational sample for every rank evaluation.
    #[arg(long, global = true)]
    pub rational: bool,

    /// Write a run manifest (command, parameters, seed, paths, version) here.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Roof,
    Banana,
    RingOfRoofs,
    RingOfTetrahedra,
    RingOfBananas,
    DoubleBanana,
    DoubleRing,
    BracedDoubleRing,
    Octahedron,
    Icosahedron,
    OctahedronRing,
    IcosahedronRing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    Henneberg1,
    Henneberg2,
    VertexSplit,
    KSum,
    RoofAddition,
    GraphCombination,
    HennebergExtender,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "command")]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Write a graph from a built-in family.
    Generate {
        family: Family,
        /// Ring size.
        #[arg(long, default_value_t = 7)]
        k: usize,
        /// Size of the second ring for double rings.
        #[arg(long)]
        k2: Option<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Rank, implied non-edges, nucleations, circuit and sparsity verdicts.
    Analyze {
        input: PathBuf,
        /// Largest nucleus size searched (default: number of vertices).
        #[arg(long)]
        nucleation_limit: Option<usize>,
    },
    /// Cover upper bound and rank sandwich certificate.
    Bound {
        input: PathBuf,
        /// JSON list of vertex sets; defaults to the cover stored in the input.
        #[arg(long)]
        cover: Option<PathBuf>,
    },
    /// Flex-sign certificate for a ring of roofs.
    Flexsign {
        #[arg(long, default_value_t = 7)]
        k: usize,
    },
    /// Apply an inductive construction to a graph file.
    Construct {
        scheme: Scheme,
        input: PathBuf,
        /// Second graph for k-sum and graph-combination.
        #[arg(long)]
        input2: Option<PathBuf>,
        /// Vertex list, e.g. `0,1,2`.
        #[arg(long, value_delimiter = ',')]
        w: Vec<usize>,
        /// A pair `a,b`: removed edge, cut non-edge or glued non-edge of the first graph.
        #[arg(long, value_delimiter = ',')]
        pair: Vec<usize>,
        /// Glued non-edge of the second graph.
        #[arg(long, value_delimiter = ',')]
        pair2: Vec<usize>,
        /// Vertex to split.
        #[arg(long)]
        u: Option<usize>,
        /// Neighbours moved to the new vertex by a split.
        #[arg(long, value_delimiter = ',')]
        moved: Vec<usize>,
        /// Neighbours shared by both halves of a split (at most two).
        #[arg(long, value_delimiter = ',')]
        extra: Vec<usize>,
        /// Matched vertices for k-sum as `x:y` (x in the first graph).
        #[arg(long = "match", value_delimiter = ',')]
        matching: Vec<String>,
        /// Edges at the cut pair sent to the second copy, as `x-y`.
        #[arg(long, value_delimiter = ',')]
        side2: Vec<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Module-rigidity proxy against generic rigidity.
    GapReport { input: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
