//! Homotopy continuation for three quadrics in projective 3-space.
//!
//! Solutions are tracked in a random affine chart l . x = 1 from the
//! total-degree start system x_k^2 - x_0^2 (k = 1, 2, 3), whose eight
//! solutions x_k = +-x_0 are known. A random complex gamma keeps the paths
//! away from singularities for all but finitely many choices.

use nalgebra::{Matrix4, Vector4};
use rand::Rng;

use super::QuadricSystem;
use crate::error::{Error, Result};
use crate::multivector::Scalar;
use crate::random;

pub type Point = Vector4<Scalar>;

/// Number of paths for three quadrics.
pub const PATHS: usize = 8;
/// Charts and gammas tried before giving up.
pub const MAX_RUNS: usize = 5;
/// Projective distance below which two solutions are identified.
pub const DEDUP_TOL: f64 = 1e-6;

const MIN_STEP: f64 = 1e-10;
const MAX_STEP: f64 = 0.05;
const DIVERGENCE: f64 = 1e8;

struct Homotopy<'a> {
    system: &'a QuadricSystem,
    chart: Point,
    gamma: Scalar,
}

fn quad(a: &[[f64; 4]; 4], x: &Point) -> Scalar {
    let mut s = Scalar::new(0.0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            s += x[i] * x[j] * a[i][j];
        }
    }
    s
}

fn quad_grad(a: &[[f64; 4]; 4], x: &Point) -> Point {
    Point::from_fn(|i, _| (0..4).map(|j| x[j] * (2.0 * a[i][j])).sum())
}

impl Homotopy<'_> {
    fn start(&self, x: &Point) -> [Scalar; 3] {
        std::array::from_fn(|k| x[k + 1] * x[k + 1] - x[0] * x[0])
    }

    fn target(&self, x: &Point) -> [Scalar; 3] {
        std::array::from_fn(|k| quad(&self.system.forms[k], x))
    }

    /// H(x, s) with the chart equation in the last row.
    fn eval(&self, x: &Point, s: f64) -> Point {
        let g = self.start(x);
        let f = self.target(x);
        let chart = self.chart.dot(x) - Scalar::new(1.0, 0.0);
        Point::new(
            self.gamma * g[0] * (1.0 - s) + f[0] * s,
            self.gamma * g[1] * (1.0 - s) + f[1] * s,
            self.gamma * g[2] * (1.0 - s) + f[2] * s,
            chart,
        )
    }

    fn jacobian(&self, x: &Point, s: f64) -> Matrix4<Scalar> {
        let mut j = Matrix4::zeros();
        for k in 0..3 {
            let mut dg = Point::zeros();
            dg[0] = -x[0] * 2.0;
            dg[k + 1] = x[k + 1] * 2.0;
            let df = quad_grad(&self.system.forms[k], x);
            for c in 0..4 {
                j[(k, c)] = self.gamma * dg[c] * (1.0 - s) + df[c] * s;
            }
        }
        for c in 0..4 {
            j[(3, c)] = self.chart[c];
        }
        j
    }

    /// dH/ds = F - gamma G.
    fn ds(&self, x: &Point) -> Point {
        let g = self.start(x);
        let f = self.target(x);
        Point::new(
            f[0] - self.gamma * g[0],
            f[1] - self.gamma * g[1],
            f[2] - self.gamma * g[2],
            Scalar::new(0.0, 0.0),
        )
    }

    fn newton(&self, x: &Point, s: f64, iters: usize, tol: f64) -> Option<Point> {
        let mut x = *x;
        for _ in 0..iters {
            let dx = self.jacobian(&x, s).lu().solve(&-self.eval(&x, s))?;
            x += dx;
            if dx.norm() <= tol * (1.0 + x.norm()) {
                return Some(x);
            }
        }
        None
    }

    fn track(&self, x0: Point) -> Result<Point> {
        let mut x = x0;
        let mut s = 0.0;
        let mut h: f64 = 0.01;
        while s < 1.0 {
            let step = h.min(1.0 - s);
            let dxds = self
                .jacobian(&x, s)
                .lu()
                .solve(&-self.ds(&x))
                .ok_or(Error::PathFailure)?;
            let pred = x + dxds * Scalar::new(step, 0.0);
            match self.newton(&pred, s + step, 4, 1e-10) {
                Some(xn) if (xn - pred).norm() <= 0.1 * (1.0 + x.norm()) => {
                    x = xn;
                    s += step;
                    h = (h * 1.5).min(MAX_STEP);
                }
                _ => {
                    h *= 0.5;
                    if h < MIN_STEP {
                        return Err(Error::PathFailure);
                    }
                }
            }
            if x.norm() > DIVERGENCE {
                return Err(Error::PathFailure);
            }
        }
        Ok(self.polish(x))
    }

    /// Endgame: plain Newton steps on the target system.
    fn polish(&self, mut x: Point) -> Point {
        for _ in 0..8 {
            match self.jacobian(&x, 1.0).lu().solve(&-self.eval(&x, 1.0)) {
                Some(dx) if dx.iter().all(|c| c.is_finite()) => x += dx,
                _ => break,
            }
        }
        x
    }
}

/// Unit-norm representative with the first coordinate of substantial size
/// made real positive.
pub fn canonical(x: &Point) -> Point {
    let x = x / Scalar::new(x.norm(), 0.0);
    let max = x.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let pivot = x
        .iter()
        .find(|c| c.norm() > 0.5 * max)
        .copied()
        .unwrap_or(Scalar::new(1.0, 0.0));
    x * (pivot.conj() / pivot.norm())
}

/// sqrt(1 - |<x, y>|^2) for the normalized points.
pub fn projective_distance(x: &Point, y: &Point) -> f64 {
    let inner = x.dotc(y).norm() / (x.norm() * y.norm());
    (1.0 - inner * inner).max(0.0).sqrt()
}

/// Largest |Q_k(x)| at the unit-norm representative, relative to the form.
pub fn residual(system: &QuadricSystem, x: &Point) -> f64 {
    let u = x / Scalar::new(x.norm(), 0.0);
    system
        .forms
        .iter()
        .map(|a| {
            let scale = a
                .iter()
                .flatten()
                .map(|v| v.abs())
                .fold(0.0, f64::max)
                .max(1e-300);
            quad(a, &u).norm() / scale
        })
        .fold(0.0, f64::max)
}

fn run_once(system: &QuadricSystem, seed: u64, tol: f64) -> Result<Vec<Point>> {
    let mut rng = random::rng(seed);
    let mut unit = || {
        let re: f64 = rng.random::<f64>() * 2.0 - 1.0;
        let im: f64 = rng.random::<f64>() * 2.0 - 1.0;
        Scalar::new(re, im)
    };
    let g = unit();
    let gamma = g / g.norm();
    let chart = Point::from_fn(|_, _| unit());
    let chart = chart / Scalar::new(chart.norm(), 0.0);
    let hom = Homotopy {
        system,
        chart,
        gamma,
    };
    let one = Scalar::new(1.0, 0.0);
    let mut out: Vec<Point> = Vec::new();
    for path in 0..PATHS {
        let signs = [0, 1, 2].map(|b| if path >> b & 1 == 0 { 1.0 } else { -1.0 });
        let dir = Point::new(one, one * signs[0], one * signs[1], one * signs[2]);
        let x0 = dir / chart.dot(&dir);
        let x = hom.track(x0)?;
        if residual(system, &x) > tol {
            return Err(Error::PathFailure);
        }
        if !out.iter().any(|y| projective_distance(y, &x) < DEDUP_TOL) {
            out.push(x);
        }
    }
    Ok(out)
}

/// All eight projective intersection points of the three quadrics, in
/// canonical representation and order.
pub fn solve(system: &QuadricSystem, seed: u64, tol: f64) -> Result<Vec<Point>> {
    let mut last = Error::PathFailure;
    for run in 0..MAX_RUNS {
        match run_once(system, seed.wrapping_mul(31).wrapping_add(run as u64), tol) {
            Ok(points) if points.len() == PATHS => {
                let mut points: Vec<Point> = points.iter().map(canonical).collect();
                points.sort_by(|a, b| sort_key(a).partial_cmp(&sort_key(b)).unwrap());
                return Ok(points);
            }
            Ok(points) => {
                last = Error::WrongCount {
                    expected: PATHS,
                    found: points.len(),
                }
            }
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn sort_key(x: &Point) -> Vec<f64> {
    let round = |v: f64| (v * 1e6).round() / 1e6;
    x.iter().flat_map(|c| [round(c.re), round(c.im)]).collect()
}
