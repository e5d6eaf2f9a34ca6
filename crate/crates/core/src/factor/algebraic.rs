//! Left factors from a common zero of the remainder and the quadratic.
//!
//! Dividing C by a real quadratic M leaves R = r1 t + r0. A left factor
//! t - h with norm M exists iff R(h) = h r1 + r0 = 0 and M(h) = 0. For
//! invertible r1 the zero is h = -r0 r1^-1. Otherwise R(h) = 0 is a
//! singular linear system; its affine solution set is intersected with
//! the quadratic conditions h + h~ = s, h h~ = p by Levenberg-Marquardt
//! from seeded starting points.

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use super::{left_zero_residual, mirror, LinearFactor, DEDUP_TOL, VERIFY_TOL};
use crate::annihilator::Side;
use crate::error::{Error, Result};
use crate::even::EvenElement;
use crate::linalg::{real_kernel, real_lstsq, real_rank};
use crate::multivector::Scalar;
use crate::poly::EvenPolynomial;
use crate::random;
use crate::roots::QuadraticFactor;

/// Number of starting points for the nonlinear solve.
const STARTS: usize = 12;
const MAX_ITER: usize = 200;

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraicOutcome {
    Unique(LinearFactor),
    /// Several solutions; `dimension` is the local dimension of the
    /// solution set at the first sample (0 for isolated solutions).
    Family {
        samples: Vec<LinearFactor>,
        dimension: usize,
    },
}

fn to_vec(e: &EvenElement) -> DVector<f64> {
    DVector::from_iterator(16, e.coeffs.iter().map(|c| c.re))
}

fn from_vec(v: &DVector<f64>) -> EvenElement {
    EvenElement {
        coeffs: std::array::from_fn(|k| Scalar::new(v[k], 0.0)),
    }
}

/// Residual of h + h~ = s, h h~ = p stacked into 32 reals.
fn residual(h: &EvenElement, s: f64, p: f64) -> DVector<f64> {
    let hr = h.reverse();
    let a = *h + hr - EvenElement::scalar(s);
    let b = *h * hr - EvenElement::scalar(p);
    DVector::from_iterator(32, a.coeffs.iter().chain(b.coeffs.iter()).map(|c| c.re))
}

fn jacobian(h: &EvenElement, dirs: &[EvenElement]) -> DMatrix<f64> {
    let hr = h.reverse();
    let mut j = DMatrix::zeros(32, dirs.len());
    for (k, v) in dirs.iter().enumerate() {
        let vr = v.reverse();
        let da = *v + vr;
        let db = *v * hr + *h * vr;
        for r in 0..16 {
            j[(r, k)] = da.coeffs[r].re;
            j[(16 + r, k)] = db.coeffs[r].re;
        }
    }
    j
}

/// Levenberg-Marquardt on y for h = base + sum y_k dirs_k.
fn solve_lm(
    base: &EvenElement,
    dirs: &[EvenElement],
    s: f64,
    p: f64,
    y0: DVector<f64>,
) -> Option<DVector<f64>> {
    let at = |y: &DVector<f64>| {
        dirs.iter()
            .zip(y.iter())
            .fold(*base, |acc, (d, &c)| acc + d.scale(c))
    };
    let scale = 1.0 + s.abs() + p.abs();
    let mut y = y0;
    let mut lambda = 1e-3;
    let mut h = at(&y);
    let mut f = residual(&h, s, p);
    for _ in 0..MAX_ITER {
        if f.norm() <= 1e-14 * scale * (1.0 + h.norm().powi(2)) {
            return Some(y);
        }
        let j = jacobian(&h, dirs);
        let jt = j.transpose();
        let g = &jt * &f;
        let mut a = &jt * &j;
        for i in 0..a.nrows() {
            a[(i, i)] += lambda * (1.0 + a[(i, i)]);
        }
        let step = a.lu().solve(&(-g))?;
        let y_new = &y + &step;
        let h_new = at(&y_new);
        let f_new = residual(&h_new, s, p);
        if f_new.norm() < f.norm() {
            y = y_new;
            h = h_new;
            f = f_new;
            lambda = (lambda * 0.3).max(1e-15);
        } else {
            lambda *= 10.0;
            if lambda > 1e12 {
                break;
            }
        }
        if step.norm() <= 1e-16 * (1.0 + y.norm()) {
            break;
        }
    }
    (f.norm() <= 1e-10 * scale * (1.0 + h.norm().powi(2))).then_some(y)
}

/// Left factor of the monic spinor polynomial C for the real quadratic q.
/// `max_samples` bounds the number of returned family members.
pub fn left_factor_algebraic(
    c: &EvenPolynomial,
    q: &QuadraticFactor,
    seed: u64,
    max_samples: usize,
    tol: f64,
) -> Result<AlgebraicOutcome> {
    super::check_quadratic(q.z1, q.z2)?;
    let m = q.poly();
    let (_, rem) = c.divide_right(&EvenPolynomial::from_real(&m))?;
    let r0 = rem.coeff(0).real_part();
    let r1 = rem.coeff(1).real_part();
    let s = -m.coeffs[1];
    let p = m.coeffs[0];
    let ftol = tol.max(1e-9);

    if let Some(inv) = r1.try_inverse(1e-12) {
        let h = -(r0 * inv);
        let f = LinearFactor::new(h, Side::Left, ftol).map_err(|_| Error::NoCommonZero)?;
        let residual = left_zero_residual(c, &f.h);
        if residual > VERIFY_TOL {
            return Err(Error::VerificationFailed { residual });
        }
        return Ok(AlgebraicOutcome::Unique(f));
    }

    // h r1 = -r0 as a real 16 x 16 system
    let a = r1.right_mul_matrix().map(|c| c.re);
    let b = -to_vec(&r0);
    let base_vec = real_lstsq(&a, &b, 1e-12);
    let scale = 1.0 + a.norm() * base_vec.norm() + b.norm();
    if (&a * &base_vec - &b).norm() > 1e-9 * scale {
        return Err(Error::NoCommonZero);
    }
    let base = from_vec(&base_vec);
    let (kernel, _) = real_kernel(&a, 1e-10);
    let dirs: Vec<EvenElement> = kernel.iter().map(from_vec).collect();

    let mut rng = random::rng(seed);
    let mut found: Vec<(LinearFactor, usize)> = Vec::new();
    for attempt in 0..STARTS {
        let y0 = if attempt == 0 {
            DVector::zeros(dirs.len())
        } else {
            DVector::from_fn(dirs.len(), |_, _| {
                2.0 * random::uniform(&mut rng) * (1.0 + rng.random::<f64>())
            })
        };
        let Some(y) = solve_lm(&base, &dirs, s, p, y0) else {
            continue;
        };
        let h = dirs
            .iter()
            .zip(y.iter())
            .fold(base, |acc, (d, &c)| acc + d.scale(c));
        let Ok(f) = LinearFactor::new(h, Side::Left, ftol) else {
            continue;
        };
        if left_zero_residual(c, &f.h) > VERIFY_TOL {
            continue;
        }
        if found
            .iter()
            .any(|(g, _)| (g.h - f.h).norm() <= DEDUP_TOL * (1.0 + f.h.norm()))
        {
            continue;
        }
        let j = jacobian(&f.h, &dirs);
        let dim = dirs.len() - real_rank(&j, 1e-8).min(dirs.len());
        found.push((f, dim));
    }
    match found.len() {
        0 => Err(Error::NoCommonZero),
        1 if found[0].1 == 0 => Ok(AlgebraicOutcome::Unique(found.remove(0).0)),
        _ => {
            let dimension = found[0].1;
            let samples = found
                .into_iter()
                .take(max_samples.max(1))
                .map(|(f, _)| f)
                .collect();
            Ok(AlgebraicOutcome::Family { samples, dimension })
        }
    }
}

/// Right factor via the reversed polynomial.
pub fn right_factor_algebraic(
    c: &EvenPolynomial,
    q: &QuadraticFactor,
    seed: u64,
    max_samples: usize,
    tol: f64,
) -> Result<AlgebraicOutcome> {
    Ok(
        match left_factor_algebraic(&c.reverse(), q, seed, max_samples, tol)? {
            AlgebraicOutcome::Unique(f) => AlgebraicOutcome::Unique(mirror(f)),
            AlgebraicOutcome::Family { samples, dimension } => AlgebraicOutcome::Family {
                samples: samples.into_iter().map(mirror).collect(),
                dimension,
            },
        },
    )
}
