//! Complex quaternions and the four-quaternion view of the even sub-algebra.

use std::ops::{Add, Mul, Neg, Sub};

use crate::even::{apply_table, ortho_to_quat, quat_to_ortho, EvenElement};
use crate::multivector::{Scalar, ZERO};

/// Quaternion w + x i + y j + z k with complex coefficients. Conjugation
/// ([`Quaternion::conj`]) negates the vector part only; it never touches the
/// complex unit.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Quaternion {
    pub w: Scalar,
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
}

impl Quaternion {
    pub fn new(
        w: impl Into<Scalar>,
        x: impl Into<Scalar>,
        y: impl Into<Scalar>,
        z: impl Into<Scalar>,
    ) -> Self {
        Self {
            w: w.into(),
            x: x.into(),
            y: y.into(),
            z: z.into(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }
    pub fn one() -> Self {
        Self::new(1.0, 0.0, 0.0, 0.0)
    }
    pub fn i() -> Self {
        Self::new(0.0, 1.0, 0.0, 0.0)
    }
    pub fn j() -> Self {
        Self::new(0.0, 0.0, 1.0, 0.0)
    }
    pub fn k() -> Self {
        Self::new(0.0, 0.0, 0.0, 1.0)
    }

    pub fn from_array(c: [Scalar; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub fn to_array(&self) -> [Scalar; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// Quaternion conjugate (reverse): w - x i - y j - z k.
    pub fn conj(&self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Complex conjugate of every coefficient.
    pub fn cconj(&self) -> Self {
        Self::from_array(self.to_array().map(|c| c.conj()))
    }

    /// Quaternion norm x x~ = w^2 + x^2 + y^2 + z^2 (no complex conjugation).
    pub fn qnorm(&self) -> Scalar {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Vectorial part.
    pub fn vect(&self) -> Self {
        Self::new(ZERO, self.x, self.y, self.z)
    }

    pub fn scale(&self, s: impl Into<Scalar>) -> Self {
        let s = s.into();
        Self::from_array(self.to_array().map(|c| c * s))
    }

    /// Frobenius magnitude of the four complex coefficients.
    pub fn abs(&self) -> f64 {
        self.to_array()
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Inverse when the quaternion norm is not (numerically) zero.
    pub fn try_inverse(&self, tol: f64) -> Option<Self> {
        let n = self.qnorm();
        if n.norm() <= tol * self.abs().powi(2) || n.norm() == 0.0 {
            return None;
        }
        Some(self.conj().scale(n.inv()))
    }

    pub fn to_even(&self) -> EvenElement {
        EvenElement::scalar(self.w)
            + EvenElement::quat_i().scale(self.x)
            + EvenElement::quat_j().scale(self.y)
            + EvenElement::quat_k().scale(self.z)
    }
}

/// Symmetric form S(x, y) = x y~ + y x~, a scalar.
pub fn s_form(x: &Quaternion, y: &Quaternion) -> Scalar {
    2.0 * (x.w * y.w + x.x * y.x + x.y * y.y + x.z * y.z)
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        self.scale(-1.0)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, r: Quaternion) -> Quaternion {
        let (a, b, c, d) = (self.w, self.x, self.y, self.z);
        let (e, f, g, h) = (r.w, r.x, r.y, r.z);
        Quaternion::new(
            a * e - b * f - c * g - d * h,
            a * f + b * e + c * h - d * g,
            a * g - b * h + c * e + d * f,
            a * h + b * g - c * f + d * e,
        )
    }
}

impl Mul<Scalar> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: Scalar) -> Quaternion {
        self.scale(s)
    }
}

/// q0 + eps1 q1 + eps2 q2 + eps3 q3.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct FourQuat {
    pub q: [Quaternion; 4],
}

/// Products eps_a eps_b as coefficients over (1, eps1, eps2, eps3).
const EPS_TABLE: [[[f64; 4]; 4]; 4] = {
    const Z: [f64; 4] = [0.0; 4];
    const ONE: [f64; 4] = [1.0, 0.0, 0.0, 0.0];
    const E1: [f64; 4] = [0.0, 1.0, 0.0, 0.0];
    const E2: [f64; 4] = [0.0, 0.0, 1.0, 0.0];
    const E3: [f64; 4] = [0.0, 0.0, 0.0, 1.0];
    const fn neg(a: [f64; 4]) -> [f64; 4] {
        [-a[0], -a[1], -a[2], -a[3]]
    }
    [
        [ONE, E1, E2, E3],
        // eps1 eps1 = 0, eps1 eps2 = eps3 - 1, eps1 eps3 = eps1
        [E1, Z, [-1.0, 0.0, 0.0, 1.0], E1],
        // eps2 eps1 = -eps3 - 1, eps2 eps2 = 0, eps2 eps3 = -eps2
        [E2, [-1.0, 0.0, 0.0, -1.0], Z, neg(E2)],
        // eps3 eps1 = -eps1, eps3 eps2 = eps2, eps3 eps3 = 1
        [E3, neg(E1), E2, ONE],
    ]
};

impl FourQuat {
    pub fn new(q0: Quaternion, q1: Quaternion, q2: Quaternion, q3: Quaternion) -> Self {
        Self {
            q: [q0, q1, q2, q3],
        }
    }

    /// Product computed purely from the eps multiplication table and the
    /// fact that eps_a commutes with quaternions.
    #[allow(clippy::needless_range_loop)]
    pub fn product(&self, other: &Self) -> Self {
        let mut out = [Quaternion::zero(); 4];
        for a in 0..4 {
            for b in 0..4 {
                let ab = self.q[a] * other.q[b];
                for (c, &w) in EPS_TABLE[a][b].iter().enumerate() {
                    if w != 0.0 {
                        out[c] = out[c] + ab.scale(w);
                    }
                }
            }
        }
        Self { q: out }
    }
}

pub fn to_four_quat(e: &EvenElement) -> FourQuat {
    let c = apply_table(ortho_to_quat(), &e.coeffs);
    FourQuat {
        q: std::array::from_fn(|j| {
            Quaternion::new(c[4 * j], c[4 * j + 1], c[4 * j + 2], c[4 * j + 3])
        }),
    }
}

pub fn from_four_quat(f: &FourQuat) -> EvenElement {
    let mut flat = [ZERO; 16];
    for (j, q) in f.q.iter().enumerate() {
        flat[4 * j..4 * j + 4].copy_from_slice(&q.to_array());
    }
    EvenElement {
        coeffs: apply_table(quat_to_ortho(), &flat),
    }
}

impl EvenElement {
    pub fn to_four_quat(&self) -> FourQuat {
        to_four_quat(self)
    }

    pub fn from_four_quat(f: &FourQuat) -> Self {
        from_four_quat(f)
    }
}
