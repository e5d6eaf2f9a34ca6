//! Left factors from two non-orthogonal annihilating points.
//!
//! For a quadratic factor (t - z1)(t - z2) of the norm with z1 != z2, the
//! evaluations n_i = C(z_i) are null displacements. Given vectors a_i with
//! a_i n_i = 0 and a1 . a2 != 0,
//!
//!   h = (z1 + z2)/2 - (z1 - z2)/(2 a1 . a2) a1 ^ a2
//!
//! gives a left factor t - h of C with norm (t - z1)(t - z2).

use super::{check_quadratic, left_zero_residual, mirror, LinearFactor, DEDUP_TOL, VERIFY_TOL};
use crate::annihilator::{left_annihilator_nullspace, NullDisplacement, Side};
use crate::error::{Error, Result};
use crate::even::{vector_wedge, EvenElement};
use crate::multivector::{CgaVector, Scalar, I, ONE};
use crate::poly::EvenPolynomial;

/// Tolerance for accepting the evaluations as null displacements.
const NULL_TOL: f64 = 1e-7;
/// Relative singular-value threshold for annihilator kernels.
const KERNEL_TOL: f64 = 1e-8;
/// Relative bound |a1 . a2| <= ORTHO_TOL |a1| |a2| for orthogonality.
const ORTHO_TOL: f64 = 1e-8;

/// A geometric left factor with the data it was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricFactor {
    pub factor: LinearFactor,
    pub z1: Scalar,
    pub z2: Scalar,
    pub n1: EvenElement,
    pub n2: EvenElement,
    pub a1: CgaVector,
    pub a2: CgaVector,
}

/// The factor element h for given roots and annihilating points. The
/// result is complex in general; it is real for real data and for
/// conjugate data with a2 = conj(a1).
pub fn left_factor_from_annihilators(
    z1: Scalar,
    z2: Scalar,
    a1: &CgaVector,
    a2: &CgaVector,
) -> Result<EvenElement> {
    let d = a1.dot(a2);
    if d.norm() <= ORTHO_TOL * a1.norm() * a2.norm() {
        return Err(Error::OrthogonalAnnihilators);
    }
    let w = vector_wedge(a1, a2);
    Ok(EvenElement::scalar((z1 + z2) * 0.5) - w.scale((z1 - z2) / (d * 2.0)))
}

fn normalized(v: CgaVector) -> Option<CgaVector> {
    let n = v.norm();
    (n > 0.0).then(|| v.scale(1.0 / n))
}

/// Candidate annihilating points from a kernel basis: the basis vectors
/// and their sums and differences. For real evaluations the real and
/// imaginary parts are used so that every candidate is real.
fn candidates(basis: &[CgaVector], real: bool) -> Vec<CgaVector> {
    let mut base: Vec<CgaVector> = Vec::new();
    for b in basis {
        if real {
            let arr = b.to_array();
            let re = CgaVector::from_array(arr.map(|c| Scalar::new(c.re, 0.0)));
            let im = CgaVector::from_array(arr.map(|c| Scalar::new(c.im, 0.0)));
            for v in [re, im] {
                if v.norm() > 1e-6 * b.norm() {
                    base.extend(normalized(v));
                }
            }
        } else {
            base.extend(normalized(*b));
        }
    }
    let mut out = base.clone();
    let coeffs: &[Scalar] = if real {
        &[ONE, Scalar::new(-1.0, 0.0)]
    } else {
        &[ONE, Scalar::new(-1.0, 0.0), I, Scalar::new(0.0, -1.0)]
    };
    for i in 0..base.len() {
        for j in i + 1..base.len() {
            for &c in coeffs {
                out.extend(normalized(base[i] + base[j].scale(c)));
            }
        }
    }
    out
}

fn null_displacement(c: &EvenPolynomial, z: Scalar) -> Result<(EvenElement, NullDisplacement)> {
    let n = c.eval(z);
    let scale: f64 = c
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, q)| q.norm() * z.norm().powi(i as i32))
        .sum();
    if n.norm() <= 1e-10 * scale {
        return Err(Error::NullEvaluationDegenerate);
    }
    Ok((n, NullDisplacement::new(n, NULL_TOL)?))
}

/// All distinct verified left factors obtainable from the annihilator
/// spaces of C(z1) and C(z2). More than one entry means the factor is not
/// unique.
pub fn geometric_candidates(
    c: &EvenPolynomial,
    z1: Scalar,
    z2: Scalar,
    tol: f64,
) -> Result<Vec<GeometricFactor>> {
    check_quadratic(z1, z2)?;
    if z1 == z2 {
        return Err(Error::InvalidInput(
            "geometric method needs distinct roots".into(),
        ));
    }
    let (n1, d1) = null_displacement(c, z1)?;
    let (n2, d2) = null_displacement(c, z2)?;
    let s1 = left_annihilator_nullspace(&d1, KERNEL_TOL)?;
    let conjugate = z1.im != 0.0;
    let pairs: Vec<(CgaVector, CgaVector)> = if conjugate {
        candidates(&s1.basis, false)
            .into_iter()
            .map(|a| (a, a.conj()))
            .collect()
    } else {
        let s2 = left_annihilator_nullspace(&d2, KERNEL_TOL)?;
        let c1 = candidates(&s1.basis, true);
        let c2 = candidates(&s2.basis, true);
        c1.iter()
            .flat_map(|a| c2.iter().map(move |b| (*a, *b)))
            .collect()
    };
    let mut out: Vec<GeometricFactor> = Vec::new();
    let mut non_orthogonal = false;
    let mut best_residual = f64::INFINITY;
    for (a1, a2) in pairs {
        let h = match left_factor_from_annihilators(z1, z2, &a1, &a2) {
            Ok(h) => h,
            Err(_) => continue,
        };
        non_orthogonal = true;
        let factor = match LinearFactor::new(h, Side::Left, tol.max(1e-9)) {
            Ok(f) => f,
            Err(_) => continue,
        };
        let residual = left_zero_residual(c, &factor.h);
        best_residual = best_residual.min(residual);
        if residual > VERIFY_TOL {
            continue;
        }
        let dup = out
            .iter()
            .any(|g| (g.factor.h - factor.h).norm() <= DEDUP_TOL * (1.0 + factor.h.norm()));
        if !dup {
            out.push(GeometricFactor {
                factor,
                z1,
                z2,
                n1,
                n2,
                a1,
                a2,
            });
        }
    }
    if !non_orthogonal {
        return Err(Error::OrthogonalAnnihilators);
    }
    if out.is_empty() {
        return Err(Error::VerificationFailed {
            residual: best_residual,
        });
    }
    Ok(out)
}

/// The first geometric left factor in canonical search order.
pub fn left_factor_geometric(
    c: &EvenPolynomial,
    z1: Scalar,
    z2: Scalar,
    tol: f64,
) -> Result<GeometricFactor> {
    geometric_candidates(c, z1, z2, tol).map(|mut v| v.swap_remove(0))
}

/// Right factor C = Q (t - h) via the left factor of the reversed
/// polynomial. The stored evaluations are those of C and the annihilating
/// points are right annihilators.
pub fn right_factor_geometric(
    c: &EvenPolynomial,
    z1: Scalar,
    z2: Scalar,
    tol: f64,
) -> Result<GeometricFactor> {
    let g = left_factor_geometric(&c.reverse(), z1, z2, tol)?;
    Ok(GeometricFactor {
        factor: mirror(g.factor),
        n1: g.n1.reverse(),
        n2: g.n2.reverse(),
        ..g
    })
}
