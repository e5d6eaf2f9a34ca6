//! Left and right annihilating points of null displacements.
//!
//! A null displacement n (Study condition and vanishing scalar part of
//! n n~) always has a vector x != 0 with x n = 0. Three methods compute it:
//! an SVD kernel of the linear map x -> x n, the sandwich n x n~ with a probe
//! vector, and an explicit quaternion case analysis ([`cases`]).

pub mod cases;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::even::EvenElement;
use crate::linalg::kernel;
use crate::multivector::{grade_of, CgaVector, Multivector, Scalar, ZERO};
use crate::random::{self, SeededRng};

pub use cases::{left_annihilator_cases, CaseBranch, CaseSolution};

/// Tolerance for accepting an element as a null displacement.
pub const DEFAULT_CONSTRUCTION_TOL: f64 = 1e-8;
/// Relative singular-value threshold for annihilator kernels.
pub const DEFAULT_KERNEL_TOL: f64 = 1e-8;
/// Number of random probes before the sandwich map is declared undefined.
pub const DEFAULT_PROBES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// An element of the Study variety on the null quadric, scaled to unit
/// Frobenius norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NullDisplacement {
    n: EvenElement,
}

impl NullDisplacement {
    pub fn new(n: EvenElement, tol: f64) -> Result<Self> {
        if !n.is_study(tol)? || !n.is_null(tol)? {
            return Err(Error::NotNullDisplacement);
        }
        Ok(Self {
            n: n.scale(1.0 / n.norm()),
        })
    }

    pub fn element(&self) -> &EvenElement {
        &self.n
    }

    pub fn reverse(&self) -> Self {
        Self {
            n: self.n.reverse(),
        }
    }
}

/// Kernel of x -> x n (left) or x -> n x (right) on vectors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnihilatorSpace {
    pub basis: Vec<CgaVector>,
    pub side: Side,
    pub generic: bool,
}

impl AnnihilatorSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NullClass {
    Generic,
    Special,
}

pub(crate) const ODD_MASKS: [usize; 16] = {
    let mut out = [0; 16];
    let mut k = 0;
    let mut m = 0;
    while m < 32 {
        if grade_of(m) % 2 == 1 {
            out[k] = m;
            k += 1;
        }
        m += 1;
    }
    out
};

pub(crate) fn odd_coeffs(m: &Multivector) -> [Scalar; 16] {
    ODD_MASKS.map(|k| m.coeffs[k])
}

/// |x n| for a vector x, over the odd coefficients.
pub fn left_residual(x: &CgaVector, n: &EvenElement) -> f64 {
    (x.to_multivector() * n.to_multivector()).norm()
}

/// |n x| for a vector x.
pub fn right_residual(x: &CgaVector, n: &EvenElement) -> f64 {
    (n.to_multivector() * x.to_multivector()).norm()
}

/// Matrix of x -> x n from null-basis vector coordinates to odd
/// orthonormal coefficients.
fn left_map(n: &EvenElement) -> DMatrix<Scalar> {
    let nm = n.to_multivector();
    let basis = [
        CgaVector::e_o(),
        CgaVector::e1(),
        CgaVector::e2(),
        CgaVector::e3(),
        CgaVector::e_inf(),
    ];
    let cols: Vec<[Scalar; 16]> = basis
        .iter()
        .map(|b| odd_coeffs(&(b.to_multivector() * nm)))
        .collect();
    DMatrix::from_fn(16, 5, |r, c| cols[c][r])
}

/// Fixes the phase so the coefficient of largest modulus is real positive.
fn fix_phase(v: CgaVector) -> CgaVector {
    let arr = v.to_array();
    let pivot = arr.iter().copied().fold(ZERO, |b, c| {
        if c.norm() > b.norm() * (1.0 + 1e-12) {
            c
        } else {
            b
        }
    });
    if pivot == ZERO {
        return v;
    }
    v.scale(pivot.conj() / pivot.norm())
}

/// Left annihilating points via an SVD kernel of x -> x n.
pub fn left_annihilator_nullspace(n: &NullDisplacement, tol: f64) -> Result<AnnihilatorSpace> {
    nullspace(n.element(), tol, Side::Left)
}

fn nullspace(n: &EvenElement, tol: f64, side: Side) -> Result<AnnihilatorSpace> {
    let (k, _) = kernel(&left_map(n), tol);
    match k.len() {
        0 => Err(Error::EmptyKernel),
        d if d > 2 => Err(Error::KernelDimension(d)),
        d => Ok(AnnihilatorSpace {
            basis: k
                .iter()
                .map(|v| fix_phase(CgaVector::new(v[0], v[1], v[2], v[3], v[4])))
                .collect(),
            side,
            generic: d == 1,
        }),
    }
}

/// n x n~ for a probe x; by construction a left annihilating point of n
/// whenever it does not vanish.
pub fn left_annihilator_sandwich(
    n: &NullDisplacement,
    probe: &CgaVector,
    tol: f64,
) -> Result<CgaVector> {
    let nm = n.element().to_multivector();
    let y = nm * probe.to_multivector() * nm.reverse();
    let v = CgaVector::from_multivector(&y.grade_part(1));
    if v.norm() <= tol * probe.norm() {
        return Err(Error::ProbeAnnihilated);
    }
    Ok(v)
}

/// Sandwich method with up to `probes` random probe vectors.
pub fn left_annihilator_sandwich_random(
    n: &NullDisplacement,
    rng: &mut SeededRng,
    probes: usize,
    tol: f64,
) -> Result<CgaVector> {
    for _ in 0..probes {
        let x = random::vector(rng);
        match left_annihilator_sandwich(n, &x, tol) {
            Ok(v) => return Ok(v),
            Err(Error::ProbeAnnihilated) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NowhereDefined { probes })
}

/// Method selector for [`right_annihilator`] and [`annihilator`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Nullspace,
    Sandwich { seed: u64 },
    Cases { seed: u64 },
}

/// Annihilator space on either side.
///
/// Right annihilators of n are the left annihilators of n~, since
/// (n x)~ = x n~ for a vector x.
pub fn annihilator(
    n: &NullDisplacement,
    side: Side,
    method: Method,
    tol: f64,
) -> Result<AnnihilatorSpace> {
    let target = match side {
        Side::Left => *n,
        Side::Right => n.reverse(),
    };
    let single = |x: CgaVector| AnnihilatorSpace {
        basis: vec![fix_phase(x.scale(1.0 / x.norm()))],
        side,
        generic: true,
    };
    match method {
        Method::Nullspace => nullspace(target.element(), tol, side),
        Method::Sandwich { seed } => {
            let mut rng = random::rng(seed);
            left_annihilator_sandwich_random(&target, &mut rng, DEFAULT_PROBES, tol).map(single)
        }
        Method::Cases { seed } => match left_annihilator_cases(&target, seed) {
            Ok(sol) => Ok(single(sol.x)),
            // borderline inputs fall back to the kernel computation
            Err(Error::InternalCaseFailure) => nullspace(target.element(), tol, side),
            Err(e) => Err(e),
        },
    }
}

pub fn right_annihilator(
    n: &NullDisplacement,
    method: Method,
    tol: f64,
) -> Result<AnnihilatorSpace> {
    annihilator(n, Side::Right, method, tol)
}

/// Generic null displacements have a unique annihilating point up to
/// scale; special ones have a two-dimensional family.
pub fn classify(n: &NullDisplacement, tol: f64) -> Result<NullClass> {
    let s = left_annihilator_nullspace(n, tol)?;
    Ok(if s.generic {
        NullClass::Generic
    } else {
        NullClass::Special
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multivector::I;
    use crate::quaternion::Quaternion;

    fn proj_eq(a: &CgaVector, b: &CgaVector) -> bool {
        crate::multivector::projective_distance(&a.to_array(), &b.to_array()) < 1e-10
    }

    #[test]
    fn eps1_is_annihilated_by_infinity() {
        let n = NullDisplacement::new(EvenElement::eps1(), 1e-10).unwrap();
        let s = left_annihilator_nullspace(&n, 1e-8).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(proj_eq(&s.basis[0], &CgaVector::e_inf()));
        let r = right_annihilator(&n, Method::Nullspace, 1e-8).unwrap();
        assert!(proj_eq(&r.basis[0], &CgaVector::e_inf()));
        assert_eq!(classify(&n, 1e-8).unwrap(), NullClass::Generic);
    }

    #[test]
    fn special_displacement() {
        // eps2 (1 + complex-i * quaternion-i)
        let q = Quaternion::new(1.0, I, 0.0, 0.0).to_even();
        let n = NullDisplacement::new(EvenElement::eps2() * q, 1e-10).unwrap();
        let s = left_annihilator_nullspace(&n, 1e-8).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(!s.generic);
        assert!(s.basis[0].dot(&s.basis[1]).norm() < 1e-10);
        let mut rng = random::rng(3);
        assert_eq!(
            left_annihilator_sandwich_random(&n, &mut rng, 8, 1e-9),
            Err(Error::NowhereDefined { probes: 8 })
        );
    }

    #[test]
    fn sandwich_with_eps1() {
        let n = NullDisplacement::new(EvenElement::eps1(), 1e-10).unwrap();
        let x = CgaVector::new(2.0, 1.0, -1.0, 0.5, 3.0);
        let a = left_annihilator_sandwich(&n, &x, 1e-12).unwrap();
        assert!(proj_eq(&a, &CgaVector::e_inf()));
        let plane = CgaVector::plane([1.0, 0.0, 0.0], 1.0);
        assert_eq!(
            left_annihilator_sandwich(&n, &plane, 1e-12),
            Err(Error::ProbeAnnihilated)
        );
    }

    #[test]
    fn non_null_rejected() {
        assert_eq!(
            NullDisplacement::new(EvenElement::one(), 1e-10),
            Err(Error::NotNullDisplacement)
        );
    }

    #[test]
    fn odd_mask_count() {
        assert!(ODD_MASKS.iter().all(|&m| grade_of(m) % 2 == 1));
        assert_eq!(ODD_MASKS[15], 31);
    }
}
