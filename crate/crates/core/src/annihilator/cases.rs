//! Explicit construction of a left annihilating point from the
//! four-quaternion coordinates n = q0 + eps1 q1 + eps2 q2 + eps3 q3.
//!
//! The solution is sought as x = x0 e_o + X e123 + x_inf e_inf with a
//! vectorial quaternion X (so that X e123 is the Euclidean part of x). A
//! fixed cascade of closed-form candidates is tried; each candidate is
//! checked against x n = 0 before it is accepted.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{left_residual, odd_coeffs, NullDisplacement};
use crate::error::{Error, Result};
use crate::linalg::kernel;
use crate::multivector::{CgaVector, Scalar, ONE, ZERO};
use crate::quaternion::{s_form, Quaternion};
use crate::random;

/// Threshold (relative to the unit-normalized n) below which a quaternion
/// or candidate is treated as zero.
pub const VANISH_TOL: f64 = 1e-9;
/// Residual bound |x n| <= VERIFY_TOL |x| for accepting a candidate.
pub const VERIFY_TOL: f64 = 1e-8;

/// Which branch of the case analysis produced the solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseBranch {
    S1_1,
    S1_2,
    S2_1,
    S2_2,
    S3_1,
    S3_2,
    S3_3,
    S4_1,
    S4_2,
    S4_3,
    S4_4,
    S4_5,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CaseSolution {
    pub x: CgaVector,
    pub case: CaseBranch,
}

fn vector_from(x0: Scalar, big_x: &Quaternion, x_inf: Scalar) -> CgaVector {
    CgaVector::new(x0, big_x.x, big_x.y, big_x.z, x_inf)
}

fn vanishes(q: &Quaternion) -> bool {
    q.abs() <= VANISH_TOL
}

struct Checker<'a> {
    n: &'a NullDisplacement,
}

impl Checker<'_> {
    /// Accepts a nonzero candidate that annihilates n.
    fn accept(&self, x: CgaVector, case: CaseBranch) -> Option<CaseSolution> {
        let nx = x.norm();
        if nx <= VANISH_TOL {
            return None;
        }
        (left_residual(&x, self.n.element()) <= VERIFY_TOL * nx).then_some(CaseSolution { x, case })
    }

    /// Finds x = x0 e_o + (sum lambda_i V_i) e123 + x_inf e_inf with x n = 0,
    /// optionally pinning x0 or x_inf to zero. Among all solutions the one
    /// with the largest |x| per unit coefficient vector is taken.
    fn ansatz(
        &self,
        dirs: &[Quaternion],
        free_o: bool,
        free_inf: bool,
        case: CaseBranch,
    ) -> Option<CaseSolution> {
        let nm = self.n.element().to_multivector();
        let mut gens: Vec<CgaVector> = dirs.iter().map(|d| vector_from(ZERO, d, ZERO)).collect();
        if free_o {
            gens.push(CgaVector::e_o());
        }
        if free_inf {
            gens.push(CgaVector::e_inf());
        }
        if gens.is_empty() {
            return None;
        }
        let cols: Vec<[Scalar; 16]> = gens
            .iter()
            .map(|g| odd_coeffs(&(g.to_multivector() * nm)))
            .collect();
        let a = DMatrix::from_fn(16, gens.len(), |r, c| cols[c][r]);
        let (ker, _) = kernel(&a, 1e-9);
        if ker.is_empty() {
            return None;
        }
        // map kernel coordinates to vector coordinates and take the
        // direction of largest image
        let g = DMatrix::from_fn(5, gens.len(), |r, c| gens[c].to_array()[r]);
        let kmat = DMatrix::from_fn(gens.len(), ker.len(), |r, c| ker[c][r]);
        let img = &g * &kmat;
        let svd = img.clone().svd(false, true);
        let v_t = svd.v_t?;
        let best = (0..svd.singular_values.len())
            .max_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]))?;
        let coeff = v_t.row(best).transpose().map(|c| c.conj());
        let x = &img * coeff;
        self.accept(CgaVector::new(x[0], x[1], x[2], x[3], x[4]), case)
    }
}

fn independent(a: &Quaternion, b: &Quaternion) -> bool {
    let cross = [
        a.y * b.z - a.z * b.y,
        a.z * b.x - a.x * b.z,
        a.x * b.y - a.y * b.x,
    ];
    let c = cross.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    c > 1e-6 * a.abs() * b.abs()
}

/// Runs the case cascade. `seed` drives the auxiliary random quaternion r
/// used in the ruling cases.
pub fn left_annihilator_cases(n: &NullDisplacement, seed: u64) -> Result<CaseSolution> {
    let f = n.element().to_four_quat();
    let [q0, q1, q2, q3] = f.q;
    let p = q0 + q3;
    let m = q0 - q3;
    let chk = Checker { n };
    use CaseBranch::*;

    let cand = [
        (
            vector_from(-q2.qnorm(), &(q2 * m.conj()), -m.qnorm() * 0.5),
            S1_1,
        ),
        (
            vector_from(-p.qnorm() * 0.5, &(q1 * p.conj()), -q1.qnorm()),
            S1_2,
        ),
        (vector_from(ZERO, &(q2 * p.conj()), -q0.qnorm() * 2.0), S2_1),
        (vector_from(-q0.qnorm() * 2.0, &(q1 * m.conj()), ZERO), S2_2),
    ];
    for (x, case) in cand {
        if let Some(s) = chk.accept(x, case) {
            return Ok(s);
        }
    }

    let (z1, z2, zp, zm) = (vanishes(&q1), vanishes(&q2), vanishes(&p), vanishes(&m));
    let mut rng = random::rng(seed);
    let sandwich = |q: &Quaternion, r: &Quaternion| *q * *r * q.conj();

    if !(z1 || z2 || zp || zm) {
        for _ in 0..8 {
            let r = random::pure_quaternion(&mut rng);
            let u = [
                sandwich(&q1, &r),
                sandwich(&q2, &r),
                sandwich(&p, &r),
                sandwich(&m, &r),
            ];
            let scales = [q1.abs(), q2.abs(), p.abs(), m.abs()];
            if u.iter()
                .zip(scales)
                .any(|(ui, s)| ui.abs() <= 1e-6 * s * s * r.abs())
            {
                continue;
            }
            let all_independent = (0..4).all(|i| (i + 1..4).all(|j| independent(&u[i], &u[j])));
            if all_independent {
                // lambda1 U1 + lambda3 U3 = lambda2 U2 + lambda4 U4
                let a = DMatrix::from_fn(3, 4, |row, c| {
                    let v = [u[0], -u[1], u[2], -u[3]][c];
                    [v.x, v.y, v.z][row]
                });
                let (ker, _) = kernel(&a, 1e-9);
                for l in &ker {
                    let big_x = u[0] * l[0] + u[2] * l[2];
                    let x0 = -l[3] * s_form(&m, &(q2 * r.conj()));
                    let x_inf = -l[2] * s_form(&p, &(q1 * r.conj()));
                    if let Some(s) = chk.accept(vector_from(x0, &big_x, x_inf), S3_1) {
                        return Ok(s);
                    }
                }
                if let Some(s) = chk.ansatz(&u, true, true, S3_1) {
                    return Ok(s);
                }
            } else if !independent(&u[0], &u[2]) {
                if let Some(s) = chk.ansatz(&[u[1], u[3]], true, true, S3_3) {
                    return Ok(s);
                }
            } else if let Some(s) = chk.ansatz(&u, true, true, S3_2) {
                return Ok(s);
            }
        }
        return Err(Error::InternalCaseFailure);
    }

    if z1 && zm {
        return chk
            .accept(CgaVector::e_o(), S4_4)
            .ok_or(Error::InternalCaseFailure);
    }
    if z2 && zp {
        return chk
            .accept(CgaVector::e_inf(), S4_5)
            .ok_or(Error::InternalCaseFailure);
    }
    for _ in 0..8 {
        let r = random::pure_quaternion(&mut rng);
        let u = [
            sandwich(&q1, &r),
            sandwich(&q2, &r),
            sandwich(&p, &r),
            sandwich(&m, &r),
        ];
        if z1 && zp {
            // X = lambda2 U2 + lambda4 U4 with x0, x_inf read off
            for (l2, l4) in [(ONE, ZERO), (ZERO, ONE), (ONE, ONE)] {
                let big_x = u[1] * l2 + u[3] * l4;
                let x0 = -l4 * s_form(&m, &(q2 * r.conj()));
                let x_inf = l2 * s_form(&q2, &(m * r.conj())) * 0.5;
                if let Some(s) = chk.accept(vector_from(x0, &big_x, x_inf), S4_2) {
                    return Ok(s);
                }
            }
            if let Some(s) = chk.ansatz(&[u[1], u[3]], true, true, S4_2) {
                return Ok(s);
            }
        } else if z2 && zm {
            if let Some(s) = chk.ansatz(&[u[0], u[2]], true, true, S4_3) {
                return Ok(s);
            }
        } else if z1 {
            let x0 = -s_form(&m, &(q2 * r.conj()));
            if let Some(s) = chk.accept(vector_from(x0, &u[3], ZERO), S4_1) {
                return Ok(s);
            }
            if let Some(s) = chk.ansatz(&[u[3]], true, false, S4_1) {
                return Ok(s);
            }
        } else {
            let dirs: Vec<Quaternion> = [(q1, z1), (q2, z2), (p, zp), (m, zm)]
                .iter()
                .zip(u)
                .filter(|((_, z), _)| !z)
                .map(|(_, ui)| ui)
                .collect();
            if let Some(s) = chk.ansatz(&dirs, true, true, S4_1) {
                return Ok(s);
            }
        }
    }
    Err(Error::InternalCaseFailure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::even::EvenElement;
    use crate::multivector::{projective_distance, I};
    use crate::quaternion::FourQuat;

    fn nd(e: EvenElement) -> NullDisplacement {
        NullDisplacement::new(e, 1e-10).unwrap()
    }

    fn proj_eq(a: &CgaVector, b: &CgaVector) -> bool {
        projective_distance(&a.to_array(), &b.to_array()) < 1e-10
    }

    #[test]
    fn eps1_uses_second_solution() {
        let s = left_annihilator_cases(&nd(EvenElement::eps1()), 0).unwrap();
        assert_eq!(s.case, CaseBranch::S1_2);
        assert!(proj_eq(&s.x, &CgaVector::e_inf()));
    }

    #[test]
    fn one_plus_eps3() {
        let s = left_annihilator_cases(&nd(EvenElement::one() + EvenElement::eps3()), 0).unwrap();
        assert_eq!(s.case, CaseBranch::S1_2);
        assert!(proj_eq(&s.x, &CgaVector::e_o()));
    }

    #[test]
    fn special_displacement_uses_origin() {
        // eps2 (1 + complex-i * quaternion-i) has q1 = q0 - q3 = 0
        let q = Quaternion::new(1.0, I, 0.0, 0.0).to_even();
        let s = left_annihilator_cases(&nd(EvenElement::eps2() * q), 5).unwrap();
        assert_eq!(s.case, CaseBranch::S4_4);
        assert!(proj_eq(&s.x, &CgaVector::e_o()));
    }

    #[test]
    fn case_4_2() {
        // q1 = q0 + q3 = 0 with every closed-form candidate vanishing
        let q = Quaternion::new(1.0, I, 0.0, 0.0);
        let f = FourQuat::new(q, Quaternion::zero(), q, -q);
        let n = EvenElement::from_four_quat(&f);
        let s = left_annihilator_cases(&nd(n), 2).unwrap();
        assert_eq!(s.case, CaseBranch::S4_2);
        assert!(left_residual(&s.x, &n) < 1e-10 * s.x.norm());
    }

    #[test]
    fn case_4_4_origin() {
        // q1 = q0 - q3 = 0: n = q0 (1 + eps3) + eps2 q2
        let q0 = Quaternion::new(1.0, 0.0, I, 0.0);
        let f = FourQuat::new(q0, Quaternion::zero(), Quaternion::zero(), q0);
        let n = EvenElement::from_four_quat(&f);
        let s = left_annihilator_cases(&nd(n), 0);
        // Solution 1.2 already vanishes here only if q1 = 0 and |q0+q3| = 0
        let s = s.unwrap();
        assert!(left_residual(&s.x, &n) < 1e-12);
    }

    #[test]
    fn quaternion_null_point() {
        // a null quaternion lies in the even algebra with q1 = q2 = q3 = 0
        let q = Quaternion::new(2.0, Scalar::new(0.0, -2.0), 0.0, 0.0);
        let n = q.to_even();
        let s = left_annihilator_cases(&nd(n), 1).unwrap();
        assert!(left_residual(&s.x, &n) < 1e-10 * s.x.norm());
    }

    #[test]
    fn agrees_with_nullspace_on_random_inputs() {
        use crate::poly::norm_poly;
        use crate::roots::find_roots;
        let mut r = random::rng(11);
        for _ in 0..50 {
            let h = random::linear_spinor_element(&mut r);
            let c = crate::poly::EvenPolynomial::linear(h);
            let np = norm_poly(&c, 1e-10).unwrap();
            for root in find_roots(&np, 1e-10).unwrap().roots {
                let n = nd(c.eval(root.z));
                let s = left_annihilator_cases(&n, 0).unwrap();
                let k = super::super::left_annihilator_nullspace(&n, 1e-8).unwrap();
                assert_eq!(k.dim(), 1);
                let d = projective_distance(&s.x.to_array(), &k.basis[0].to_array());
                assert!(d < 1e-7, "{:?} {d}", s.case);
            }
        }
    }
}
