//! Left factors for a repeated real root of the norm polynomial.
//!
//! With (t - z)^2 dividing the norm, a left factor t - h with norm
//! (t - z)^2 exists iff C'(z)~ C(z) != 0. The construction shifts z to 0,
//! moves the annihilating point of C(0) to e_inf by a conformal
//! transformation and then solves a quaternion equation for the plane b in
//! h = e_inf b.

use super::{left_zero_residual, mirror, LinearFactor, VERIFY_TOL};
use crate::annihilator::{left_annihilator_nullspace, NullDisplacement, Side};
use crate::error::{Error, Result};
use crate::even::EvenElement;
use crate::multivector::{CgaVector, Multivector, Scalar};
use crate::poly::EvenPolynomial;
use crate::quaternion::Quaternion;

/// Relative threshold below which the criterion product counts as zero.
pub const CRITERION_TOL: f64 = 1e-9;
const NULL_TOL: f64 = 1e-7;
const KERNEL_TOL: f64 = 1e-8;

/// |C'(z)~ C(z)| relative to |C'(z)| |C(z)|.
pub fn double_root_criterion(c: &EvenPolynomial, z: f64) -> f64 {
    let c0 = c.eval(Scalar::new(z, 0.0));
    let c1 = c.derivative().eval(Scalar::new(z, 0.0));
    let scale = c0.norm() * c1.norm();
    if scale == 0.0 {
        return 0.0;
    }
    (c1.reverse() * c0).norm() / scale
}

/// A real annihilating point of the real null displacement n, preferring
/// e_inf itself when it qualifies.
fn real_annihilator(n: &EvenElement) -> Result<CgaVector> {
    let d = NullDisplacement::new(*n, NULL_TOL)?;
    let space = left_annihilator_nullspace(&d, KERNEL_TOL)?;
    let mut cands = Vec::new();
    for b in &space.basis {
        let arr = b.to_array();
        for part in [
            arr.map(|c| Scalar::new(c.re, 0.0)),
            arr.map(|c| Scalar::new(c.im, 0.0)),
        ] {
            let v = CgaVector::from_array(part);
            if v.norm() > 1e-6 * b.norm() {
                cands.push(v.scale(1.0 / v.norm()));
            }
        }
    }
    cands
        .iter()
        .find(|v| v.a_o.norm() <= 1e-12)
        .or(cands.first())
        .copied()
        .ok_or(Error::EmptyKernel)
}

fn sandwich_poly(v: &Multivector, c: &EvenPolynomial) -> EvenPolynomial {
    EvenPolynomial::new(
        c.coeffs
            .iter()
            .map(|q| EvenElement::from_multivector_unchecked(&(*v * q.to_multivector() * *v)))
            .collect(),
    )
}

/// Left factor t - h of the monic spinor polynomial C with norm (t - z)^2.
pub fn left_factor_double_root(c: &EvenPolynomial, z: f64, tol: f64) -> Result<LinearFactor> {
    if !z.is_finite() {
        return Err(Error::NonFinite);
    }
    let shifted = c.shift(Scalar::new(z, 0.0));
    let c0 = shifted.coeff(0);
    if c0.norm() <= 1e-12 * shifted.max_norm() {
        return Err(Error::NullEvaluationDegenerate);
    }
    if double_root_criterion(c, z) <= CRITERION_TOL {
        return Err(Error::NoFactor);
    }
    let a = real_annihilator(&c0.real_part())?;
    // conformal change of frame that sends the annihilating point to e_inf
    let (work, frame) = if a.a_o.norm() <= 1e-12 {
        (shifted.clone(), None)
    } else {
        let v = (a + CgaVector::e_inf()).to_multivector();
        let v2 = (v * v).scalar_part();
        let v_inv = v.scale(v2.inv());
        (sandwich_poly(&v, &shifted), Some((v, v_inv)))
    };
    // c0 = eps1 (q1 + eps2 q2) has four-quaternion form (-q2, q1, 0, q2);
    // h c1 + c0 = 0 with h = e_inf b reduces to B (r0 + r3) = q1, B r2 = q2
    let f0 = work.coeff(0).to_four_quat();
    let f1 = work.coeff(1).to_four_quat();
    let (q1, q2) = (f0.q[1], f0.q[3]);
    let (r03, r2) = (f1.q[0] + f1.q[3], f1.q[2]);
    let scale = f1.q.iter().map(Quaternion::abs).fold(0.0, f64::max);
    let (num, den) = if r03.abs() >= r2.abs() {
        (q1, r03)
    } else {
        (q2, r2)
    };
    if den.abs() <= 1e-9 * scale {
        return Err(Error::DegenerateData);
    }
    let b = num * den.try_inverse(0.0).ok_or(Error::DegenerateData)?;
    // plane b = B e123; its e_inf coefficient drops out of e_inf b
    let plane = b.vect().to_even().to_multivector() * Multivector::e123();
    let h_work =
        EvenElement::from_multivector_unchecked(&(Multivector::e_inf() * plane.grade_part(1)));
    let h_shift = match frame {
        None => h_work,
        Some((v, v_inv)) => {
            EvenElement::from_multivector_unchecked(&(v_inv * h_work.to_multivector() * v))
        }
    };
    let h = h_shift + EvenElement::scalar(z);
    let factor = LinearFactor::new(h, Side::Left, tol.max(1e-9))?;
    let residual = left_zero_residual(c, &factor.h);
    if residual > VERIFY_TOL {
        return Err(Error::VerificationFailed { residual });
    }
    Ok(factor)
}

/// Right factor C = Q (t - h) with norm (t - z)^2, via the reversed
/// polynomial.
pub fn right_factor_double_root(c: &EvenPolynomial, z: f64, tol: f64) -> Result<LinearFactor> {
    left_factor_double_root(&c.reverse(), z, tol).map(mirror)
}
