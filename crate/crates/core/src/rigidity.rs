//! Generic 3D rigidity matroid queries.
//!
//! Generic rank is estimated by evaluating the rigidity matrix at random
//! coordinates. A random evaluation can only under-report the rank, so every
//! query takes the maximum over its trials, and verdicts that depend on the
//! rank being generic (implied pairs, circuits) only use samples that reach
//! that maximum. Optionally one extra sample is drawn with random integer
//! coordinates and eliminated over `Q`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphFile, VertexPair};
use crate::linalg::{self, Fp, Matrix, Scalar, SubspaceBasis, P};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RigidityError {
    #[error("framework has {got} coordinate triples for {n} vertices")]
    MissingCoordinates { n: usize, got: usize },
    #[error("coordinate {0:?} is not a rational number")]
    BadCoordinate(String),
}

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Half-width of the integer box used for rational samples.
pub const RATIONAL_COORD_BOUND: i64 = 1 << 16;

/// Graph plus a point in 3-space per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Framework<T> {
    graph: Graph,
    coords: Vec<[T; 3]>,
}

impl<T: Scalar> Framework<T> {
    pub fn new(graph: Graph, coords: Vec<[T; 3]>) -> Result<Self, RigidityError> {
        if coords.len() != graph.n() {
            return Err(RigidityError::MissingCoordinates { n: graph.n(), got: coords.len() });
        }
        Ok(Framework { graph, coords })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn coords(&self) -> &[[T; 3]] {
        &self.coords
    }

    pub fn with_graph(&self, graph: Graph) -> Result<Self, RigidityError> {
        Framework::new(graph, self.coords.clone())
    }

    /// Row of the rigidity matrix for the pair `{a, b}` (edge or not).
    pub fn pair_row(&self, a: usize, b: usize) -> Vec<T> {
        let mut row = vec![T::zero(); 3 * self.graph.n()];
        for k in 0..3 {
            let d = self.coords[a][k].sub(&self.coords[b][k]);
            row[3 * b + k] = d.neg();
            row[3 * a + k] = d;
        }
        row
    }

    /// `(p_a − p_b) · (v_a − v_b)` for a velocity vector `v` of length 3n.
    pub fn pair_derivative(&self, a: usize, b: usize, v: &[T]) -> T {
        (0..3).fold(T::zero(), |acc, k| {
            let dp = self.coords[a][k].sub(&self.coords[b][k]);
            let dv = v[3 * a + k].sub(&v[3 * b + k]);
            acc.add(&dp.mul(&dv))
        })
    }
}

impl Framework<BigRational> {
    pub fn from_file(file: &GraphFile) -> Result<Self, Box<dyn std::error::Error + Send + Sync>> {
        let graph = file.to_graph()?;
        let coords = file.coords.as_ref().ok_or(RigidityError::MissingCoordinates { n: graph.n(), got: 0 })?;
        let parsed = coords
            .iter()
            .map(|c| {
                let mut out: [BigRational; 3] = Default::default();
                for k in 0..3 {
                    out[k] = linalg::parse_rational(&c[k]).ok_or_else(|| RigidityError::BadCoordinate(c[k].clone()))?;
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>, RigidityError>>()?;
        Ok(Framework::new(graph, parsed)?)
    }

    pub fn coord_text(&self) -> Vec<[String; 3]> {
        self.coords.iter().map(|c| [c[0].to_string(), c[1].to_string(), c[2].to_string()]).collect()
    }
}

/// `|E| × 3n` matrix, one row per edge in canonical edge order.
pub fn rigidity_matrix<T: Scalar>(f: &Framework<T>) -> Matrix<T> {
    let rows = f.graph.edges().iter().map(|e| f.pair_row(e.u, e.v)).collect();
    Matrix::from_rows(rows, 3 * f.graph.n())
}

/// Right nullspace of the rigidity matrix (infinitesimal motions).
pub fn motion_space<T: Scalar>(f: &Framework<T>) -> SubspaceBasis<T> {
    linalg::right_nullspace(&rigidity_matrix(f))
}

/// Left nullspace of the rigidity matrix (self-stresses, indexed by edge).
pub fn stress_space<T: Scalar>(f: &Framework<T>) -> SubspaceBasis<T> {
    linalg::left_nullspace(&rigidity_matrix(f))
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Uniform random coordinates in `Z_p`, reproducible from `(seed, trial)`.
pub fn random_field_framework(g: &Graph, seed: u64, trial: u64) -> Framework<Fp> {
    let mut rng = trial_rng(seed, trial);
    let coords = (0..g.n())
        .map(|_| [0; 3].map(|_: u8| Fp::new(rng.gen_range(0..P))))
        .collect();
    Framework { graph: g.clone(), coords }
}

/// Random integer coordinates in `[−bound, bound]`, reproducible from `(seed, trial)`.
pub fn random_integer_framework(g: &Graph, seed: u64, trial: u64, bound: i64) -> Framework<BigRational> {
    let mut rng = trial_rng(seed ^ 0x9e37_79b9_7f4a_7c15, trial);
    let coords = (0..g.n())
        .map(|_| [0; 3].map(|_: u8| BigRational::from_integer(BigInt::from(rng.gen_range(-bound..=bound)))))
        .collect();
    Framework { graph: g.clone(), coords }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RationalCheck {
    Never,
    /// Confirm with one rational sample when the graph has at most this many vertices.
    UpTo(usize),
    Always,
}

impl RationalCheck {
    fn applies(self, n: usize) -> bool {
        match self {
            RationalCheck::Never => false,
            RationalCheck::UpTo(k) => n <= k,
            RationalCheck::Always => true,
        }
    }
}

/// How many random samples to draw and from which seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankConfig {
    pub trials: usize,
    pub seed: u64,
    pub rational: RationalCheck,
}

impl Default for RankConfig {
    fn default() -> Self {
        RankConfig { trials: 3, seed: DEFAULT_SEED, rational: RationalCheck::Never }
    }
}

impl RankConfig {
    /// Three field trials plus a rational sample on graphs up to 60 vertices.
    pub fn confirmed() -> Self {
        RankConfig { rational: RationalCheck::UpTo(60), ..Default::default() }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        RankConfig { seed, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankMode {
    RandomizedField,
    RationalOracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericRankResult {
    pub rank: usize,
    pub trials: usize,
    pub seed: u64,
    pub mode: RankMode,
    /// Rank of the rational sample, when one was taken.
    pub rational_rank: Option<usize>,
}

impl GenericRankResult {
    /// False when a rational sample was taken and disagreed with the field trials.
    pub fn consistent(&self) -> bool {
        self.rational_rank.is_none_or(|r| r == self.rank)
    }
}

/// One evaluated sample: its rank and a basis of motions.
struct Sample<T: Scalar> {
    framework: Framework<T>,
    rank: usize,
    motions: SubspaceBasis<T>,
}

impl<T: Scalar> Sample<T> {
    fn new(framework: Framework<T>) -> Self {
        let motions = motion_space(&framework);
        let rank = 3 * framework.graph.n() - motions.dim();
        Sample { framework, rank, motions }
    }

    /// The pair's row lies in the row space iff it annihilates every motion.
    fn implies(&self, a: usize, b: usize) -> bool {
        self.motions
            .vectors
            .iter()
            .all(|v| self.framework.pair_derivative(a, b, v).is_zero())
    }
}

enum AnySample {
    Field(Sample<Fp>),
    Rational(Sample<BigRational>),
}

impl AnySample {
    fn rank(&self) -> usize {
        match self {
            AnySample::Field(s) => s.rank,
            AnySample::Rational(s) => s.rank,
        }
    }

    fn implies(&self, a: usize, b: usize) -> bool {
        match self {
            AnySample::Field(s) => s.implies(a, b),
            AnySample::Rational(s) => s.implies(a, b),
        }
    }

    fn stress_has_full_support(&self) -> bool {
        fn full<T: Scalar>(s: &Sample<T>) -> bool {
            let st = stress_space(&s.framework);
            st.dim() == 1 && st.vectors[0].iter().all(|x| !x.is_zero())
        }
        match self {
            AnySample::Field(s) => full(s),
            AnySample::Rational(s) => full(s),
        }
    }
}

fn samples(g: &Graph, cfg: &RankConfig) -> Vec<AnySample> {
    let mut out: Vec<AnySample> = (0..cfg.trials.max(1))
        .map(|t| AnySample::Field(Sample::new(random_field_framework(g, cfg.seed, t as u64))))
        .collect();
    if cfg.rational.applies(g.n()) {
        let f = random_integer_framework(g, cfg.seed, 0, RATIONAL_COORD_BOUND);
        out.push(AnySample::Rational(Sample::new(f)));
    }
    out
}

fn rank_result(cfg: &RankConfig, all: &[AnySample]) -> GenericRankResult {
    let rank = all.iter().map(AnySample::rank).max().unwrap_or(0);
    let rational_rank = all.iter().find_map(|s| match s {
        AnySample::Rational(s) => Some(s.rank),
        AnySample::Field(_) => None,
    });
    GenericRankResult {
        rank,
        trials: cfg.trials.max(1),
        seed: cfg.seed,
        mode: if rational_rank.is_some() { RankMode::RationalOracle } else { RankMode::RandomizedField },
        rational_rank,
    }
}

/// Field-only rank: maximum over `trials` random evaluations.
pub fn generic_rank(g: &Graph, trials: usize, seed: u64) -> GenericRankResult {
    generic_rank_with(g, &RankConfig { trials, seed, rational: RationalCheck::Never })
}

/// Rank with the rational sample taken whenever `cfg` asks for one.
pub fn generic_rank_with(g: &Graph, cfg: &RankConfig) -> GenericRankResult {
    let mut ranks = Vec::new();
    for t in 0..cfg.trials.max(1) {
        let f = random_field_framework(g, cfg.seed, t as u64);
        ranks.push(linalg::rank(&rigidity_matrix(&f)));
    }
    let rational_rank = cfg.rational.applies(g.n()).then(|| rational_rank(g, cfg.seed));
    GenericRankResult {
        rank: ranks.into_iter().chain(rational_rank).max().unwrap_or(0),
        trials: cfg.trials.max(1),
        seed: cfg.seed,
        mode: if rational_rank.is_some() { RankMode::RationalOracle } else { RankMode::RandomizedField },
        rational_rank,
    }
}

/// Rank of the rigidity matrix at one random integer placement, over `Q`.
pub fn rational_rank(g: &Graph, seed: u64) -> usize {
    linalg::rank(&rigidity_matrix(&random_integer_framework(g, seed, 0, RATIONAL_COORD_BOUND)))
}

/// `3n − 6` for `n ≥ 3`; the rank of a rigid graph on `n` vertices.
pub fn rigid_rank(n: usize) -> usize {
    match n {
        0 | 1 => 0,
        2 => 1,
        _ => 3 * n - 6,
    }
}

/// `max(0, 3n − 6 − rank)`; graphs on fewer than three vertices have dof 0.
pub fn dof_from_rank(n: usize, rank: usize) -> usize {
    if n < 3 {
        0
    } else {
        (3 * n - 6).saturating_sub(rank)
    }
}

pub fn dof(g: &Graph) -> usize {
    dof_with(g, &RankConfig::default())
}

pub fn dof_with(g: &Graph, cfg: &RankConfig) -> usize {
    dof_from_rank(g.n(), generic_rank_with(g, cfg).rank)
}

pub fn is_independent(g: &Graph) -> bool {
    is_independent_with(g, &RankConfig::default())
}

/// Stops at the first sample reaching full row rank.
pub fn is_independent_with(g: &Graph, cfg: &RankConfig) -> bool {
    let m = g.edge_count();
    if m == 0 {
        return true;
    }
    (0..cfg.trials.max(1)).any(|t| linalg::rank(&rigidity_matrix(&random_field_framework(g, cfg.seed, t as u64))) == m)
}

/// True iff the generic rank equals `3n − 6` (or `n ≤ 2` and the graph is complete).
pub fn is_rigid_with(g: &Graph, cfg: &RankConfig) -> bool {
    let target = rigid_rank(g.n());
    if g.edge_count() < target {
        return false;
    }
    (0..cfg.trials.max(1)).any(|t| linalg::rank(&rigidity_matrix(&random_field_framework(g, cfg.seed, t as u64))) == target)
}

pub fn is_rigid(g: &Graph) -> bool {
    is_rigid_with(g, &RankConfig::default())
}

/// Rank together with the implied non-edges, from one shared set of samples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImpliedResult {
    pub rank: GenericRankResult,
    pub implied: Vec<VertexPair>,
}

pub fn implied_nonedges(g: &Graph) -> Vec<VertexPair> {
    implied_nonedges_with(g, &RankConfig::default()).implied
}

/// A non-edge is reported when its row lies in the row space at every sample
/// of maximal rank. Each sample serves `G` and every `G ∪ {a, b}` at once.
pub fn implied_nonedges_with(g: &Graph, cfg: &RankConfig) -> ImpliedResult {
    let all = samples(g, cfg);
    let rank = rank_result(cfg, &all);
    let best: Vec<&AnySample> = all.iter().filter(|s| s.rank() == rank.rank).collect();
    let implied = g
        .non_edges()
        .into_iter()
        .filter(|p| best.iter().all(|s| s.implies(p.u, p.v)))
        .collect();
    ImpliedResult { rank, implied }
}

/// `G` together with all of its implied non-edges.
pub fn closure(g: &Graph) -> Graph {
    closure_with(g, &RankConfig::default())
}

pub fn closure_with(g: &Graph, cfg: &RankConfig) -> Graph {
    g.with_edges(implied_nonedges_with(g, cfg).implied)
}

/// Maximal vertex sets (size ≥ 2) inducing complete subgraphs of the closure.
pub fn rigid_components(g: &Graph) -> Vec<Vec<usize>> {
    rigid_components_with(g, &RankConfig::default())
}

pub fn rigid_components_with(g: &Graph, cfg: &RankConfig) -> Vec<Vec<usize>> {
    maximal_cliques(&closure_with(g, cfg)).into_iter().filter(|c| c.len() >= 2).collect()
}

/// Bron–Kerbosch with pivoting; cliques sorted internally and lexicographically.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    let adj: Vec<BTreeSet<usize>> = g.adjacency().into_iter().map(|l| l.into_iter().collect()).collect();
    let mut out = Vec::new();
    fn bk(
        adj: &[BTreeSet<usize>],
        r: &mut Vec<usize>,
        p: BTreeSet<usize>,
        mut x: BTreeSet<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by_key(|&&u| p.iter().filter(|w| adj[u].contains(w)).count())
            .copied()
            .expect("p or x nonempty");
        let candidates: Vec<usize> = p.iter().filter(|w| !adj[pivot].contains(w)).copied().collect();
        let mut p = p;
        for v in candidates {
            r.push(v);
            let np = p.intersection(&adj[v]).copied().collect();
            let nx = x.intersection(&adj[v]).copied().collect();
            bk(adj, r, np, nx, out);
            r.pop();
            p.remove(&v);
            x.insert(v);
        }
    }
    bk(&adj, &mut Vec::new(), (0..g.n()).collect(), BTreeSet::new(), &mut out);
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Complete,
    /// Some closure clique is larger than the size limit; nuclei above the limit were not sought.
    SizeLimitExceeded,
    /// The candidate budget ran out before the search finished.
    CandidateCapReached,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NucleationSearch {
    /// Inclusion-maximal vertex sets `S`, `5 ≤ |S| ≤ limit`, with `G[S]` rigid.
    pub nucleations: Vec<Vec<usize>>,
    pub status: SearchStatus,
    pub candidates_checked: usize,
}

/// Default budget of rank evaluations for [`find_nucleations`].
pub const NUCLEATION_CANDIDATE_CAP: usize = 200_000;

pub fn find_nucleations(g: &Graph, size_limit: usize) -> NucleationSearch {
    find_nucleations_with(g, size_limit, &RankConfig::default(), NUCLEATION_CANDIDATE_CAP)
}

/// Rigid induced subgraphs on at least five vertices.
///
/// If `G[S]` is rigid then every pair of `S` is implied in `G`, so `S` lies in
/// a maximal clique of the closure. Each such clique is searched from its
/// largest subsets down, skipping subsets of nuclei already found and subsets
/// with fewer than `3|S| − 6` edges or a vertex of degree below 3.
pub fn find_nucleations_with(g: &Graph, size_limit: usize, cfg: &RankConfig, cap: usize) -> NucleationSearch {
    let cliques = maximal_cliques(&closure_with(g, cfg));
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut checked = 0usize;
    let mut status = SearchStatus::Complete;
    let adj = g.adjacency_matrix();

    'cliques: for c in cliques.iter().filter(|c| c.len() >= 5) {
        if c.len() > size_limit {
            status = SearchStatus::SizeLimitExceeded;
        }
        let top = c.len().min(size_limit);
        for size in (5..=top).rev() {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                let s: Vec<usize> = idx.iter().map(|&i| c[i]).collect();
                let covered = found.iter().any(|f| s.iter().all(|x| f.binary_search(x).is_ok()));
                if !covered && plausibly_rigid(&adj, &s) {
                    if checked >= cap {
                        status = SearchStatus::CandidateCapReached;
                        break 'cliques;
                    }
                    checked += 1;
                    let sub = g.induced(&s).expect("clique vertices in range").graph;
                    if is_rigid_with(&sub, cfg) {
                        found.push(s);
                    }
                }
                if !next_combination(&mut idx, c.len()) {
                    break;
                }
            }
        }
    }
    found.sort();
    found.dedup();
    let maximal: Vec<Vec<usize>> = found
        .iter()
        .filter(|s| !found.iter().any(|t| t.len() > s.len() && s.iter().all(|x| t.binary_search(x).is_ok())))
        .cloned()
        .collect();
    NucleationSearch { nucleations: maximal, status, candidates_checked: checked }
}

fn plausibly_rigid(adj: &[Vec<bool>], s: &[usize]) -> bool {
    let mut edges = 0;
    for &a in s {
        let deg = s.iter().filter(|&&b| adj[a][b]).count();
        if deg < 3 {
            return false;
        }
        edges += deg;
    }
    edges / 2 >= 3 * s.len() - 6
}

/// Advances `idx` to the next k-subset of `0..n` in lexicographic order.
pub fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub fn is_circuit(g: &Graph) -> bool {
    is_circuit_with(g, &RankConfig::default())
}

/// Dependent with every proper edge subset independent. Decided from one
/// sample of rank `|E| − 1`: its unique stress is nonzero on edge `e` exactly
/// when `G − e` has full rank at that sample.
pub fn is_circuit_with(g: &Graph, cfg: &RankConfig) -> bool {
    let m = g.edge_count();
    if m == 0 {
        return false;
    }
    let all = samples(g, cfg);
    let rank = rank_result(cfg, &all).rank;
    rank + 1 == m && all.iter().filter(|s| s.rank() == rank).any(AnySample::stress_has_full_support)
}
