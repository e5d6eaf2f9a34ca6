//! Axes of a spherical four-bar linkage from its coupler curve.
//!
//! The coupler motion is a curve in the projective space of quaternions,
//! given by two quadrics. Its eight intersections with the null quadric
//! x0^2 + x1^2 + x2^2 + x3^2 = 0 are null displacements. Pairs of them span
//! rulings of the null quadric; points on a ruling of one kind share a left
//! annihilator, points on a ruling of the other kind share a right one.
//! The wedge a ^ conj(a) of a shared annihilator is an imaginary bivector
//! whose imaginary part is a revolute axis.

pub mod homotopy;

use serde::{Deserialize, Serialize};

use crate::annihilator::{annihilator, Method, NullDisplacement, Side};
use crate::error::{Error, Result};
use crate::even::vector_wedge;
use crate::multivector::{CgaVector, Scalar};
use crate::quaternion::{s_form, Quaternion};

pub use homotopy::{canonical, projective_distance, Point};

/// Residual bound for accepted intersection points.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Relative bound for S(n_i, n_j) = 0.
pub const RULING_TOL: f64 = 1e-7;
/// Projective agreement of shared annihilators.
pub const SHARE_TOL: f64 = 1e-7;
/// Relative real residue tolerated in a wedge a ^ conj(a).
pub const AXIS_TOL: f64 = 1e-6;

/// Three quadratic forms x^T A x on (x0, x1, x2, x3).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadricSystem {
    pub forms: [[[f64; 4]; 4]; 3],
}

/// Symmetric matrix of sum c_ij x_i x_j given as (i, j, c) with i <= j.
fn form(terms: &[(usize, usize, f64)]) -> [[f64; 4]; 4] {
    let mut a = [[0.0; 4]; 4];
    for &(i, j, c) in terms {
        if i == j {
            a[i][i] += c;
        } else {
            a[i][j] += 0.5 * c;
            a[j][i] += 0.5 * c;
        }
    }
    a
}

fn norm_form() -> [[f64; 4]; 4] {
    form(&[(0, 0, 1.0), (1, 1, 1.0), (2, 2, 1.0), (3, 3, 1.0)])
}

impl QuadricSystem {
    #[allow(clippy::needless_range_loop)]
    pub fn new(forms: [[[f64; 4]; 4]; 3]) -> Result<Self> {
        for a in &forms {
            for i in 0..4 {
                for j in 0..4 {
                    if !a[i][j].is_finite() {
                        return Err(Error::NonFinite);
                    }
                    if (a[i][j] - a[j][i]).abs() > 1e-12 * (1.0 + a[i][j].abs()) {
                        return Err(Error::InvalidInput(
                            "quadratic forms must be symmetric".into(),
                        ));
                    }
                }
            }
        }
        Ok(Self { forms })
    }

    /// The coupler curve of the worked example with the null quadric,
    /// with the two sign corrections that make it pass through the
    /// reference null points.
    pub fn reference() -> Self {
        let g1 = form(&[
            (0, 0, 1.0),
            (1, 1, 1.0),
            (2, 2, 1.0),
            (3, 3, 1.0),
            (0, 2, -4.0),
            (1, 3, 4.0),
        ]);
        let g2 = form(&[
            (0, 0, 13.0),
            (1, 1, -3.0),
            (2, 2, 13.0),
            (3, 3, -3.0),
            (0, 1, 16.0),
            (2, 3, 16.0),
            (0, 2, -12.0),
            (0, 3, 12.0),
            (1, 2, 12.0),
            (1, 3, 12.0),
        ]);
        Self {
            forms: [g1, g2, norm_form()],
        }
    }

    /// The curve generators without the two sign corrections:
    /// N - 4(x0 x2 + x1 x3) and
    /// 13x0^2 - 3x1^2 + 13x2^2 - 3x3^2 + 16(x0x1 + x2x3) - 12(x0 + x1)(x2 - x3).
    pub fn uncorrected() -> Self {
        let g1 = form(&[
            (0, 0, 1.0),
            (1, 1, 1.0),
            (2, 2, 1.0),
            (3, 3, 1.0),
            (0, 2, -4.0),
            (1, 3, -4.0),
        ]);
        let g2 = form(&[
            (0, 0, 13.0),
            (1, 1, -3.0),
            (2, 2, 13.0),
            (3, 3, -3.0),
            (0, 1, 16.0),
            (2, 3, 16.0),
            (0, 2, -12.0),
            (0, 3, 12.0),
            (1, 2, -12.0),
            (1, 3, 12.0),
        ]);
        Self {
            forms: [g1, g2, norm_form()],
        }
    }

    /// {x0 x1, x2 x3, N}: eight coordinate-aligned null points.
    pub fn decoupled() -> Self {
        Self {
            forms: [form(&[(0, 1, 1.0)]), form(&[(2, 3, 1.0)]), norm_form()],
        }
    }

    pub fn residual(&self, x: &Point) -> f64 {
        homotopy::residual(self, x)
    }
}

/// Partner indices of a point, one per ruling kind.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RulingPartners {
    pub first: Option<usize>,
    pub second: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NullPointRecord {
    pub n: Quaternion,
    pub residual: f64,
    pub left_ann: CgaVector,
    pub right_ann: CgaVector,
    pub ruling_partners: RulingPartners,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RulingKind {
    /// Shared right annihilator.
    First,
    /// Shared left annihilator.
    Second,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RulingGraph {
    pub first: Vec<(usize, usize)>,
    pub second: Vec<(usize, usize)>,
}

/// Unit axis directions in (i, j, k) coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisSet {
    pub fixed: Vec<[f64; 3]>,
    pub moving: Vec<[f64; 3]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourBarReport {
    pub solutions: Vec<NullPointRecord>,
    pub rulings: RulingGraph,
    pub axes: AxisSet,
}

pub fn point_to_quaternion(x: &Point) -> Quaternion {
    Quaternion::new(x[0], x[1], x[2], x[3])
}

pub fn quaternion_to_point(q: &Quaternion) -> Point {
    Point::new(q.w, q.x, q.y, q.z)
}

/// Solves the system and wraps each point with its annihilators.
pub fn intersect_curve_null(
    system: &QuadricSystem,
    seed: u64,
    tol: f64,
) -> Result<Vec<NullPointRecord>> {
    let points = homotopy::solve(system, seed, tol)?;
    points
        .iter()
        .map(|x| record(&point_to_quaternion(x), system.residual(x)))
        .collect()
}

fn record(n: &Quaternion, residual: f64) -> Result<NullPointRecord> {
    let nd = NullDisplacement::new(n.to_even(), 1e-8)?;
    let ann = |side| {
        annihilator(&nd, side, Method::Nullspace, 1e-8).map(|s| {
            let v = s.basis[0];
            v.scale(1.0 / v.norm())
        })
    };
    Ok(NullPointRecord {
        n: *n,
        residual,
        left_ann: ann(Side::Left)?,
        right_ann: ann(Side::Right)?,
        ruling_partners: RulingPartners::default(),
    })
}

/// Records for externally supplied null points.
pub fn records_from_points(points: &[Quaternion]) -> Result<Vec<NullPointRecord>> {
    points
        .iter()
        .map(|q| {
            let n = q.to_even();
            let scale = q.abs().max(1e-300);
            let residual = (n * n.reverse()).scalar_part().norm() / (scale * scale);
            record(q, residual)
        })
        .collect()
}

/// Whether two vectors agree up to a complex scale.
pub fn projectively_equal(a: &CgaVector, b: &CgaVector, tol: f64) -> bool {
    let (x, y) = (a.to_array(), b.to_array());
    let scale = a.norm() * b.norm();
    (0..5).all(|i| (i + 1..5).all(|j| (x[i] * y[j] - x[j] * y[i]).norm() <= tol * scale))
}

/// Pairs with S(n_i, n_j) = 0, split by the annihilator they share. Each
/// point must have exactly one partner of each kind.
pub fn pair_by_rulings(records: &mut [NullPointRecord]) -> Result<RulingGraph> {
    if records.len() < 2 {
        return Err(Error::InvalidInput("need at least two points".into()));
    }
    let mut graph = RulingGraph::default();
    for i in 0..records.len() {
        for j in i + 1..records.len() {
            let (a, b) = (&records[i], &records[j]);
            let s = s_form(&a.n, &b.n).norm() / (a.n.abs() * b.n.abs());
            if s > RULING_TOL {
                continue;
            }
            let left = projectively_equal(&a.left_ann, &b.left_ann, SHARE_TOL);
            let right = projectively_equal(&a.right_ann, &b.right_ann, SHARE_TOL);
            match (left, right) {
                (true, false) => graph.second.push((i, j)),
                (false, true) => graph.first.push((i, j)),
                _ => return Err(Error::InconsistentRulingGraph),
            }
        }
    }
    for r in records.iter_mut() {
        r.ruling_partners = RulingPartners::default();
    }
    for (kind, pairs) in [
        (RulingKind::First, &graph.first),
        (RulingKind::Second, &graph.second),
    ] {
        for &(i, j) in pairs {
            for (p, q) in [(i, j), (j, i)] {
                let slot = match kind {
                    RulingKind::First => &mut records[p].ruling_partners.first,
                    RulingKind::Second => &mut records[p].ruling_partners.second,
                };
                if slot.replace(q).is_some() {
                    return Err(Error::InconsistentRulingGraph);
                }
            }
        }
    }
    let complete = records
        .iter()
        .all(|r| r.ruling_partners.first.is_some() && r.ruling_partners.second.is_some());
    if !complete {
        return Err(Error::InconsistentRulingGraph);
    }
    Ok(graph)
}

/// Unit axis of the bivector a ^ conj(a), sign canonicalized.
pub fn axis_from_annihilator(a: &CgaVector) -> Result<[f64; 3]> {
    let w = vector_wedge(a, &a.conj()).to_four_quat();
    let v = w.q[0].vect();
    let comps = [v.x, v.y, v.z];
    let im = comps.map(|c| c.im);
    let im_norm = im.iter().map(|c| c * c).sum::<f64>().sqrt();
    let re_norm = comps.iter().map(|c| c.re * c.re).sum::<f64>().sqrt();
    let rest: f64 = w.q[1..].iter().map(Quaternion::abs).sum::<f64>() + w.q[0].w.norm();
    let residue = (re_norm + rest) / im_norm.max(1e-300);
    if im_norm == 0.0 || residue > AXIS_TOL {
        return Err(Error::NonRealAxis { residue });
    }
    let mut axis = im.map(|c| {
        if c.abs() <= 1e-12 * im_norm {
            0.0
        } else {
            c / im_norm
        }
    });
    if let Some(first) = axis.iter().find(|c| c.abs() > 1e-9) {
        if *first < 0.0 {
            axis = axis.map(|c| -c);
        }
    }
    // adding zero turns -0.0 into 0.0
    Ok(axis.map(|c| c + 0.0))
}

fn distinct_axes(axes: impl Iterator<Item = Result<[f64; 3]>>) -> Result<Vec<[f64; 3]>> {
    let mut out: Vec<[f64; 3]> = Vec::new();
    for a in axes {
        let a = a?;
        let same = |b: &[f64; 3]| {
            a.iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max)
                < 1e-6
        };
        if !out.iter().any(same) {
            out.push(a);
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(out)
}

/// Fixed axes from left annihilators of second-kind rulings, moving axes
/// from right annihilators of first-kind rulings.
pub fn axes_from_annihilators(records: &[NullPointRecord], graph: &RulingGraph) -> Result<AxisSet> {
    Ok(AxisSet {
        fixed: distinct_axes(
            graph
                .second
                .iter()
                .map(|&(i, _)| axis_from_annihilator(&records[i].left_ann)),
        )?,
        moving: distinct_axes(
            graph
                .first
                .iter()
                .map(|&(i, _)| axis_from_annihilator(&records[i].right_ann)),
        )?,
    })
}

fn analyze(mut solutions: Vec<NullPointRecord>) -> Result<FourBarReport> {
    let rulings = pair_by_rulings(&mut solutions)?;
    let axes = axes_from_annihilators(&solutions, &rulings)?;
    Ok(FourBarReport {
        solutions,
        rulings,
        axes,
    })
}

/// Full pipeline: intersection, rulings and axes.
pub fn run(system: &QuadricSystem, seed: u64, tol: f64) -> Result<FourBarReport> {
    analyze(intersect_curve_null(system, seed, tol)?)
}

/// Rulings and axes for precomputed null points.
pub fn run_from_points(points: &[Quaternion]) -> Result<FourBarReport> {
    analyze(records_from_points(points)?)
}

/// The eight reference null points n1..n4 followed by their conjugates.
pub fn reference_points() -> Vec<Quaternion> {
    let r2 = std::f64::consts::SQRT_2;
    let c = Scalar::new;
    let n = [
        Quaternion::new(c(2.0, 0.0), c(0.0, -2.0), c(r2, r2), c(-r2, r2)),
        Quaternion::new(c(2.0, 0.0), c(0.0, -2.0), c(-r2, -r2), c(r2, -r2)),
        Quaternion::new(c(5.0, 0.0), c(-4.0, -3.0), c(3.0, -4.0), c(0.0, 5.0)),
        Quaternion::new(c(5.0, 0.0), c(4.0, 3.0), c(-3.0, 4.0), c(0.0, 5.0)),
    ];
    n.iter()
        .copied()
        .chain(n.iter().map(Quaternion::cconj))
        .collect()
}
