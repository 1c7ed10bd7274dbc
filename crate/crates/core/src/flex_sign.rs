//! Concrete roof realizations, hinge-length sign patterns of their flexes,
//! the sign-propagation certificate for rings of roofs, and the stress probe
//! for the coincident position used with roof addition.
//!
//! Hinge signs are signs of `(p_a − p_b) · (ṗ_a − ṗ_b)`, half the derivative
//! of the squared hinge length, computed exactly over `Q`.
//!
//! Roof vertices follow the generators: hinges `{0,1}` and `{2,3}`, apex 4.
//!
//! | kind     | 0       | 1       | 2       | 3       | apex          |
//! |----------|---------|---------|---------|---------|---------------|
//! | convex   | (0,0,0) | (1,1,0) | (1,0,0) | (0,1,0) | (1/2,1/2,1)   |
//! | pointed  | (0,0,0) | (4,0,0) | (2,1,0) | (2,3,0) | (2,3/2,1)     |
//! | crossing | (0,0,0) | (1,0,0) | (1,1,0) | (0,1,0) | (1/2,1/2,1)   |

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{self, roof_addition, ConstructionError, Distribution, RoofAdditionLayout};
use crate::graph::{Graph, VertexPair};
use crate::linalg::{self, rational, Matrix, Scalar};
use crate::rigidity::{self, Framework};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlexSignError {
    #[error("ring assembly failed: {0}")]
    AssemblyFailed(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

type Point = [BigRational; 3];

fn pt(x: (i64, i64), y: (i64, i64), z: (i64, i64)) -> Point {
    [rational(x.0, x.1), rational(y.0, y.1), rational(z.0, z.1)]
}

fn int_pt(x: i64, y: i64, z: i64) -> Point {
    [x, y, z].map(BigRational::from_i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RoofKind {
    Convex,
    Pointed,
    Crossing,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoofRealization {
    pub kind: RoofKind,
    pub framework: Framework<BigRational>,
    pub hinges: [VertexPair; 2],
}

pub fn realize_roof(kind: RoofKind) -> RoofRealization {
    let coords = match kind {
        RoofKind::Convex => vec![int_pt(0, 0, 0), int_pt(1, 1, 0), int_pt(1, 0, 0), int_pt(0, 1, 0), pt((1, 2), (1, 2), (1, 1))],
        RoofKind::Pointed => vec![int_pt(0, 0, 0), int_pt(4, 0, 0), int_pt(2, 1, 0), int_pt(2, 3, 0), pt((2, 1), (3, 2), (1, 1))],
        RoofKind::Crossing => vec![int_pt(0, 0, 0), int_pt(1, 0, 0), int_pt(1, 1, 0), int_pt(0, 1, 0), pt((1, 2), (1, 2), (1, 1))],
    };
    let framework = Framework::new(constructions::roof().graph, coords).expect("five points");
    RoofRealization { kind, framework, hinges: [VertexPair::new(0, 1), VertexPair::new(2, 3)] }
}

/// Velocity field of the trivial motions: three translations, three rotations.
pub fn trivial_motions(coords: &[Point]) -> Vec<Vec<BigRational>> {
    let n = coords.len();
    let zero = BigRational::zero();
    let mut out = Vec::new();
    for d in 0..3 {
        let mut v = vec![zero.clone(); 3 * n];
        for i in 0..n {
            v[3 * i + d] = BigRational::from_i64(1);
        }
        out.push(v);
    }
    for axis in 0..3 {
        let mut w = [0i64; 3];
        w[axis] = 1;
        let w = w.map(BigRational::from_i64);
        let mut v = Vec::with_capacity(3 * n);
        for p in coords {
            v.push(&w[1] * &p[2] - &w[2] * &p[1]);
            v.push(&w[2] * &p[0] - &w[0] * &p[2]);
            v.push(&w[0] * &p[1] - &w[1] * &p[0]);
        }
        out.push(v);
    }
    out
}

/// Motions that extend the span of the trivial motions, one per dimension of
/// the quotient.
pub fn internal_motions(f: &Framework<BigRational>) -> Vec<Vec<BigRational>> {
    let kernel = rigidity::motion_space(f);
    let trivial = trivial_motions(f.coords());
    let cols = 3 * f.graph().n();
    let mut basis = trivial;
    let mut r = linalg::rank(&Matrix::from_rows(basis.clone(), cols));
    let mut out = Vec::new();
    for v in kernel.vectors {
        basis.push(v.clone());
        let r2 = linalg::rank(&Matrix::from_rows(basis.clone(), cols));
        if r2 > r {
            r = r2;
            out.push(v);
        } else {
            basis.pop();
        }
    }
    out
}

fn sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// One row per internal motion, one column per pair: sign of the derivative of
/// the squared distance.
pub fn hinge_sign_pattern(f: &Framework<BigRational>, pairs: &[VertexPair]) -> Vec<Vec<i8>> {
    internal_motions(f)
        .iter()
        .map(|v| pairs.iter().map(|p| sign(&f.pair_derivative(p.u, p.v, v))).collect())
        .collect()
}

/// Flips a sign row so its first nonzero entry is positive.
pub fn normalize_signs(row: &[i8]) -> Vec<i8> {
    let s = row.iter().copied().find(|&x| x != 0).unwrap_or(1);
    row.iter().map(|&x| x * s).collect()
}

/// Roof type read off a single-flex sign pattern on its two hinges.
pub fn classify_pattern(pattern: &[Vec<i8>]) -> Option<RoofKind> {
    match pattern {
        [row] if row.len() == 2 && row[0] != 0 && row[1] != 0 => {
            Some(if row[0] == row[1] { RoofKind::Pointed } else { RoofKind::Convex })
        }
        _ => None,
    }
}

/// Coordinates for a ring of `k` roofs laid out by [`constructions::ring_of_roofs`].
///
/// Base points `P_j = (round(10 cos 2πj/k), round(10 sin 2πj/k), z_j)` with
/// `z_j = 1` for even `j`, `−1` for odd `j` not divisible by 3, `2` otherwise.
/// Hinge `j` lies on the line from `P_{j−1}` to `P_j` at parameters `−1/2`
/// and `1/2` (`3/2` for hinge 0). Apex `i` sits above the centroid of its
/// four base points, offset by 5 along `(P_{i+1} − P_i) × (P_{i−1} − P_i)`
/// scaled to unit max-norm.
pub fn ring_coordinates(k: usize) -> Vec<Point> {
    let base: Vec<[i64; 3]> = (0..k)
        .map(|j| {
            let t = 2.0 * std::f64::consts::PI * j as f64 / k as f64;
            let z = if j % 2 == 0 { 1 } else if j % 3 != 0 { -1 } else { 2 };
            [(10.0 * t.cos()).round() as i64, (10.0 * t.sin()).round() as i64, z]
        })
        .collect();
    let mut pts: Vec<Point> = vec![int_pt(0, 0, 0); 3 * k];
    for j in 0..k {
        let a = base[(j + k - 1) % k];
        let b = base[j];
        let s = rational(-1, 2);
        let t = if j == 0 { rational(3, 2) } else { rational(1, 2) };
        for d in 0..3 {
            let ad = BigRational::from_i64(a[d]);
            let dd = BigRational::from_i64(b[d] - a[d]);
            pts[3 * j][d] = &ad + &s * &dd;
            pts[3 * j + 1][d] = &ad + &t * &dd;
        }
    }
    for i in 0..k {
        let j = (i + 1) % k;
        let four = [3 * i, 3 * i + 1, 3 * j, 3 * j + 1];
        let u: Vec<i64> = (0..3).map(|d| base[j][d] - base[i][d]).collect();
        let w: Vec<i64> = (0..3).map(|d| base[(i + k - 1) % k][d] - base[i][d]).collect();
        let nrm = [u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]];
        let l = nrm.iter().map(|x| x.abs()).max().unwrap_or(1).max(1);
        for d in 0..3 {
            let sum = four.iter().fold(BigRational::zero(), |acc, &x| acc + &pts[x][d]);
            pts[3 * i + 2][d] = sum / BigRational::from_i64(4) + rational(5 * nrm[d], l);
        }
    }
    pts
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSignCheck {
    /// Per roof: normalized signs on (hinge i, hinge i+1) of its single flex.
    pub roof_patterns: Vec<Vec<i8>>,
    pub roof_kinds: Vec<Option<RoofKind>>,
    /// Product over roofs of `sign(hinge i) · sign(hinge i+1)`.
    pub sign_product: i8,
    /// Propagating an expansion around the ring returns with the opposite sign.
    pub parity_contradiction: bool,
    pub rank: usize,
    pub internal_motion_dim: usize,
    /// Every internal motion of the whole ring leaves every hinge length stationary.
    pub hinge_derivatives_zero: bool,
}

fn check_ring(k: usize, coords: &[Point]) -> Result<(RingSignCheck, Vec<Vec<BigRational>>), FlexSignError> {
    let ring = constructions::ring_of_roofs(k)?;
    let mut patterns = Vec::with_capacity(k);
    let mut kinds = Vec::with_capacity(k);
    let roof = constructions::roof().graph;
    for i in 0..k {
        let j = (i + 1) % k;
        let idx = [3 * i, 3 * i + 1, 3 * j, 3 * j + 1, 3 * i + 2];
        let f = Framework::new(roof.clone(), idx.iter().map(|&x| coords[x].clone()).collect()).expect("five points");
        let p = hinge_sign_pattern(&f, &[VertexPair::new(0, 1), VertexPair::new(2, 3)]);
        kinds.push(classify_pattern(&p));
        patterns.push(p.first().map(|r| normalize_signs(r)).unwrap_or_default());
    }
    let sign_product = patterns
        .iter()
        .map(|p| if p.len() == 2 { p[0] * p[1] } else { 0 })
        .product::<i8>();

    let f = Framework::new(ring.graph.clone(), coords.to_vec()).expect("3k points");
    let rank = linalg::rank(&rigidity::rigidity_matrix(&f));
    let internal = internal_motions(&f);
    let hinge_derivatives_zero = internal
        .iter()
        .all(|v| ring.hinges.iter().all(|h| f.pair_derivative(h.u, h.v, v).is_zero()));
    Ok((
        RingSignCheck {
            roof_patterns: patterns,
            roof_kinds: kinds,
            sign_product,
            parity_contradiction: sign_product == -1,
            rank,
            internal_motion_dim: internal.len(),
            hinge_derivatives_zero,
        },
        internal,
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbationCheck {
    pub seed: u64,
    pub patterns_unchanged: bool,
    pub parity_contradiction: bool,
    pub hinge_derivatives_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlexSignCertificate {
    pub k: usize,
    /// False for `k ≤ 6`, where the ring is rigid and the argument is not needed.
    pub applicable: bool,
    /// Generic degrees of freedom of the ring graph.
    pub dof: usize,
    pub check: Option<RingSignCheck>,
    /// Internal motions of the assembled ring, as rational strings.
    pub motion_basis: Vec<Vec<String>>,
    pub perturbations: Vec<PerturbationCheck>,
    pub holds: bool,
}

pub const PERTURBATION_COUNT: usize = 10;

/// Builds the ring framework (roof 0 convex, the rest pointed), checks the
/// sign-parity contradiction and the vanishing of every hinge derivative, and
/// repeats both at [`PERTURBATION_COUNT`] random perturbations of all
/// coordinates by rationals of size at most 1/100.
pub fn flex_sign_certificate(k: usize, seed: u64) -> Result<FlexSignCertificate, FlexSignError> {
    if k < 3 {
        return Err(FlexSignError::BadParameter(format!("ring needs k ≥ 3, got {k}")));
    }
    let coords = ring_coordinates(k);
    let (check, internal) = check_ring(k, &coords)?;
    let dof = rigidity::dof(&constructions::ring_of_roofs(k)?.graph);
    if k <= 6 {
        return Ok(FlexSignCertificate {
            k,
            applicable: false,
            dof,
            check: Some(check),
            motion_basis: Vec::new(),
            perturbations: Vec::new(),
            holds: false,
        });
    }
    let expected_kinds: Vec<Option<RoofKind>> =
        (0..k).map(|i| Some(if i == 0 { RoofKind::Convex } else { RoofKind::Pointed })).collect();
    if check.roof_kinds != expected_kinds {
        return Err(FlexSignError::AssemblyFailed(format!("roof kinds {:?}", check.roof_kinds)));
    }
    if check.rank != 8 * k {
        return Err(FlexSignError::AssemblyFailed(format!("rank {} at the assembled position", check.rank)));
    }

    let mut perturbations = Vec::with_capacity(PERTURBATION_COUNT);
    for t in 0..PERTURBATION_COUNT as u64 {
        let pseed = seed.wrapping_add(t);
        let mut rng = ChaCha8Rng::seed_from_u64(pseed);
        let moved: Vec<Point> = coords
            .iter()
            .map(|p| {
                let mut q = p.clone();
                for x in q.iter_mut() {
                    *x += BigRational::new(BigInt::from(rng.gen_range(-10i64..=10)), BigInt::from(1000));
                }
                q
            })
            .collect();
        let (c, _) = check_ring(k, &moved)?;
        perturbations.push(PerturbationCheck {
            seed: pseed,
            patterns_unchanged: c.roof_patterns == check.roof_patterns,
            parity_contradiction: c.parity_contradiction,
            hinge_derivatives_zero: c.hinge_derivatives_zero,
        });
    }
    let holds = check.parity_contradiction
        && check.hinge_derivatives_zero
        && perturbations
            .iter()
            .all(|p| p.patterns_unchanged && p.parity_contradiction && p.hinge_derivatives_zero);
    Ok(FlexSignCertificate {
        k,
        applicable: true,
        dof,
        check: Some(check),
        motion_basis: internal.iter().map(|v| v.iter().map(ToString::to_string).collect()).collect(),
        perturbations,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub layout: RoofAdditionLayout,
    pub stress_dim: usize,
    /// Stress dimension of `H` alone with `a`, `b` at the coincident positions.
    pub host_stress_dim: usize,
    /// Apex stresses agree in pairs: `s(c,u) = s(c,b1)`, `s(c,a1) = s(c,v)`, `s(c',v) = s(c',a2)`, `s(c',u) = s(c',b2)`.
    pub apex_stresses_pair_up: bool,
    /// The roof terms at `a1` and `a2` cancel, as do those at `b1` and `b2`.
    pub roof_terms_cancel: bool,
    /// Restricting a stress to the edges of `H` gives a self-stress of `H`.
    pub restriction_is_stress: bool,
    /// No nonzero stress vanishes on all edges of `H`.
    pub restriction_injective: bool,
    pub vacuous: bool,
}

/// Places `a1 = a2 = (0,0,0)`, `b1 = b2 = (0,2,0)`, `u = (2,0,0)`,
/// `v = (2,2,0)`, `c = (1,1,1)`, `c' = (1,1,−1)` and all other vertices of `H`
/// at random integer points, then checks the stress identities of the
/// roof-addition output at that position.
pub fn coincident_probe(h: &Graph, ab: VertexPair, dist: &Distribution, seed: u64) -> Result<ProbeReport, FlexSignError> {
    let out = roof_addition(h, ab, dist)?;
    let g = &out.graph;
    let lay = RoofAdditionLayout::new(h.n(), ab);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coords: Vec<Point> = (0..g.n())
        .map(|_| [0; 3].map(|_: u8| BigRational::from_i64(rng.gen_range(-50i64..=50))))
        .collect();
    let fixed = [
        (lay.a1, int_pt(0, 0, 0)),
        (lay.a2, int_pt(0, 0, 0)),
        (lay.b1, int_pt(0, 2, 0)),
        (lay.b2, int_pt(0, 2, 0)),
        (lay.u, int_pt(2, 0, 0)),
        (lay.v, int_pt(2, 2, 0)),
        (lay.c, int_pt(1, 1, 1)),
        (lay.c2, int_pt(1, 1, -1)),
    ];
    for (x, p) in fixed {
        coords[x] = p;
    }
    let f = Framework::new(g.clone(), coords.clone()).expect("coordinates for every vertex");
    let stresses = rigidity::stress_space(&f);
    let edge_idx = |x: usize, y: usize| g.edge_index(x, y).expect("roof edge present");
    let s = |w: &[BigRational], x: usize, y: usize| w[edge_idx(x, y)].clone();

    let apex_stresses_pair_up = stresses.vectors.iter().all(|w| {
        s(w, lay.c, lay.u) == s(w, lay.c, lay.b1)
            && s(w, lay.c, lay.a1) == s(w, lay.c, lay.v)
            && s(w, lay.c2, lay.v) == s(w, lay.c2, lay.a2)
            && s(w, lay.c2, lay.u) == s(w, lay.c2, lay.b2)
    });

    let roof_terms_cancel = stresses.vectors.iter().all(|w| {
        [(lay.a1, lay.a2), (lay.b1, lay.b2)].iter().all(|&(x1, x2)| {
            let mut total = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
            for (x, apex) in [(x1, lay.c), (x2, lay.c2)] {
                for y in [apex, lay.u, lay.v] {
                    let sw = s(w, x, y);
                    for d in 0..3 {
                        total[d] += &sw * (&coords[x][d] - &coords[y][d]);
                    }
                }
            }
            total.iter().all(Scalar::is_zero)
        })
    });

    // Edge of H ↦ index in G, through the distribution.
    let h_to_g: Vec<usize> = h
        .edges()
        .iter()
        .map(|e| {
            let side = dist.get(e).copied();
            let place = |x: usize| match side {
                Some(constructions::Side::Two) if x == lay.a1 => lay.a2,
                Some(constructions::Side::Two) if x == lay.b1 => lay.b2,
                _ => x,
            };
            edge_idx(place(e.u), place(e.v))
        })
        .collect();
    let hf = Framework::new(h.clone(), coords[..h.n()].to_vec()).expect("host coordinates");
    let rh = rigidity::rigidity_matrix(&hf);
    let restricted: Vec<Vec<BigRational>> =
        stresses.vectors.iter().map(|w| h_to_g.iter().map(|&i| w[i].clone()).collect()).collect();
    let restriction_is_stress = restricted.iter().all(|w| rh.vec_mul(w).iter().all(Scalar::is_zero));
    let restriction_injective = restricted.is_empty()
        || linalg::rank(&Matrix::from_rows(restricted.clone(), h.edge_count())) == stresses.dim();
    let host_stress_dim = linalg::left_nullspace(&rh).dim();

    Ok(ProbeReport {
        layout: lay,
        stress_dim: stresses.dim(),
        host_stress_dim,
        apex_stresses_pair_up,
        roof_terms_cancel,
        restriction_is_stress,
        restriction_injective,
        vacuous: stresses.dim() == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roof_kinds_have_one_flex() {
        for kind in [RoofKind::Convex, RoofKind::Pointed, RoofKind::Crossing] {
            let r = realize_roof(kind);
            assert_eq!(internal_motions(&r.framework).len(), 1, "{kind:?}");
        }
    }

    #[test]
    fn roof_sign_patterns() {
        let convex = realize_roof(RoofKind::Convex);
        let p = hinge_sign_pattern(&convex.framework, &convex.hinges);
        assert_eq!(classify_pattern(&p), Some(RoofKind::Convex));
        let pointed = realize_roof(RoofKind::Pointed);
        let p = hinge_sign_pattern(&pointed.framework, &pointed.hinges);
        assert_eq!(classify_pattern(&p), Some(RoofKind::Pointed));
    }

    #[test]
    fn patterns_scale_invariant() {
        let r = realize_roof(RoofKind::Pointed);
        let scaled: Vec<Point> = r
            .framework
            .coords()
            .iter()
            .map(|p| p.clone().map(|x| x * BigRational::from_i64(7)))
            .collect();
        let f = Framework::new(r.framework.graph().clone(), scaled).unwrap();
        let a = hinge_sign_pattern(&r.framework, &r.hinges);
        let b = hinge_sign_pattern(&f, &r.hinges);
        assert_eq!(normalize_signs(&a[0]), normalize_signs(&b[0]));
    }

    #[test]
    fn k4_has_no_flex() {
        let f = Framework::new(
            Graph::complete(4),
            vec![int_pt(0, 0, 0), int_pt(1, 0, 0), int_pt(0, 1, 0), int_pt(0, 0, 1)],
        )
        .unwrap();
        assert!(hinge_sign_pattern(&f, &[VertexPair::new(0, 1)]).is_empty());
    }

    #[test]
    fn rigid_ring_not_applicable() {
        let c = flex_sign_certificate(6, 1).unwrap();
        assert!(!c.applicable);
        assert_eq!(c.dof, 0);
    }

    #[test]
    fn gadget_alone_has_no_stress() {
        let h = Graph::empty(2);
        let r = coincident_probe(&h, VertexPair::new(0, 1), &Distribution::new(), 3).unwrap();
        assert_eq!(r.stress_dim, 0);
        assert!(r.vacuous && r.apex_stresses_pair_up && r.roof_terms_cancel);
    }

    #[test]
    fn ring_certificates_hold() {
        for k in [7, 8] {
            let c = flex_sign_certificate(k, 11).unwrap();
            assert!(c.applicable && c.holds, "k = {k}: {c:?}");
            assert_eq!(c.dof, k - 6);
            assert_eq!(c.motion_basis.len(), k - 6);
            assert_eq!(c.perturbations.len(), PERTURBATION_COUNT);
        }
    }

    #[test]
    fn dependent_host_gives_nontrivial_stresses() {
        let ab = VertexPair::new(0, 1);
        let h = Graph::complete(6).without_edge(ab);
        let mut dist = Distribution::new();
        for e in h.edges() {
            if e.contains(0) || e.contains(1) {
                let side = if (e.u + e.v) % 2 == 0 { constructions::Side::One } else { constructions::Side::Two };
                dist.insert(*e, side);
            }
        }
        let r = coincident_probe(&h, ab, &dist, 5).unwrap();
        assert!(r.stress_dim > 0);
        assert!(r.apex_stresses_pair_up && r.roof_terms_cancel && r.restriction_is_stress && r.restriction_injective);
    }
}
