//! Full Cl(4,1) multivectors over the orthonormal basis {e1, e2, e3, e+, e-}.
//!
//! Blades are indexed by a 5-bit mask: bit 0 = e1, bit 1 = e2, bit 2 = e3,
//! bit 3 = e+, bit 4 = e-. A blade is the ascending product of its
//! generators, e.g. mask 0b00101 is e1 e3.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Scalar = Complex64;

pub const ZERO: Scalar = Scalar::new(0.0, 0.0);
pub const ONE: Scalar = Scalar::new(1.0, 0.0);
pub const I: Scalar = Scalar::new(0.0, 1.0);

pub const E1: usize = 1;
pub const E2: usize = 2;
pub const E3: usize = 4;
pub const EP: usize = 8;
pub const EM: usize = 16;
/// Bit holding the only generator with negative square.
const NEGATIVE: usize = EM;

pub const fn grade_of(mask: usize) -> u32 {
    mask.count_ones()
}

/// Sign of the geometric product of blades `a` and `b`, including the
/// reordering parity and the metric sign of e-.
pub const fn blade_sign(a: usize, b: usize) -> f64 {
    let mut swaps = 0;
    let mut x = a >> 1;
    while x != 0 {
        swaps += (x & b).count_ones();
        x >>= 1;
    }
    let mut s = if swaps % 2 == 1 { -1.0 } else { 1.0 };
    if a & b & NEGATIVE != 0 {
        s = -s;
    }
    s
}

/// Reversion sign (-1)^(k(k-1)/2) for grade k.
pub const fn reverse_sign(grade: u32) -> f64 {
    if (grade * (grade.wrapping_sub(1))) / 2 % 2 == 1 {
        -1.0
    } else {
        1.0
    }
}

const fn sign_table() -> [[f64; 32]; 32] {
    let mut t = [[0.0; 32]; 32];
    let mut a = 0;
    while a < 32 {
        let mut b = 0;
        while b < 32 {
            t[a][b] = blade_sign(a, b);
            b += 1;
        }
        a += 1;
    }
    t
}

pub(crate) static SIGNS: [[f64; 32]; 32] = sign_table();

/// Multivector with 32 complex coefficients in bitmask order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Multivector {
    pub coeffs: [Scalar; 32],
}

impl Default for Multivector {
    fn default() -> Self {
        Self::zero()
    }
}

impl Multivector {
    pub const fn zero() -> Self {
        Self { coeffs: [ZERO; 32] }
    }

    pub fn scalar(s: impl Into<Scalar>) -> Self {
        let mut m = Self::zero();
        m.coeffs[0] = s.into();
        m
    }

    /// Unit blade with the given bitmask.
    pub fn blade(mask: usize) -> Self {
        let mut m = Self::zero();
        m.coeffs[mask] = ONE;
        m
    }

    pub fn e1() -> Self {
        Self::blade(E1)
    }
    pub fn e2() -> Self {
        Self::blade(E2)
    }
    pub fn e3() -> Self {
        Self::blade(E3)
    }
    pub fn e_plus() -> Self {
        Self::blade(EP)
    }
    pub fn e_minus() -> Self {
        Self::blade(EM)
    }
    /// Origin e_o = (e- - e+)/2.
    pub fn e_o() -> Self {
        CgaVector::e_o().to_multivector()
    }
    /// Point at infinity e_inf = e- + e+.
    pub fn e_inf() -> Self {
        CgaVector::e_inf().to_multivector()
    }
    /// Euclidean pseudoscalar e123.
    pub fn e123() -> Self {
        Self::blade(E1 | E2 | E3)
    }

    pub fn from_coeffs(coeffs: [Scalar; 32]) -> Result<Self> {
        if coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        Ok(Self { coeffs })
    }

    pub fn geometric_product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, &x) in self.coeffs.iter().enumerate() {
            if x == ZERO {
                continue;
            }
            let row = &SIGNS[a];
            for (b, &y) in other.coeffs.iter().enumerate() {
                if y == ZERO {
                    continue;
                }
                out.coeffs[a ^ b] += x * y * row[b];
            }
        }
        out
    }

    pub fn reverse(&self) -> Self {
        let mut out = *self;
        for (mask, c) in out.coeffs.iter_mut().enumerate() {
            *c *= reverse_sign(grade_of(mask));
        }
        out
    }

    /// Complex conjugation of every coefficient.
    pub fn conj(&self) -> Self {
        let mut out = *self;
        for c in out.coeffs.iter_mut() {
            *c = c.conj();
        }
        out
    }

    pub fn grade_part(&self, k: u32) -> Self {
        let mut out = Self::zero();
        for (mask, &c) in self.coeffs.iter().enumerate() {
            if grade_of(mask) == k {
                out.coeffs[mask] = c;
            }
        }
        out
    }

    pub fn even_part(&self) -> Self {
        self.filter(|m| grade_of(m).is_multiple_of(2))
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|m| grade_of(m) % 2 == 1)
    }

    fn filter(&self, keep: impl Fn(usize) -> bool) -> Self {
        let mut out = Self::zero();
        for (mask, &c) in self.coeffs.iter().enumerate() {
            if keep(mask) {
                out.coeffs[mask] = c;
            }
        }
        out
    }

    pub fn scalar_part(&self) -> Scalar {
        self.coeffs[0]
    }

    /// Frobenius norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn scale(&self, s: impl Into<Scalar>) -> Self {
        let s = s.into();
        let mut out = *self;
        for c in out.coeffs.iter_mut() {
            *c *= s;
        }
        out
    }
}

impl Index<usize> for Multivector {
    type Output = Scalar;
    fn index(&self, mask: usize) -> &Scalar {
        &self.coeffs[mask]
    }
}

impl IndexMut<usize> for Multivector {
    fn index_mut(&mut self, mask: usize) -> &mut Scalar {
        &mut self.coeffs[mask]
    }
}

/// Elementwise linear operations for the fixed-size coefficient types.
macro_rules! linear_ops {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(mut self, rhs: $t) -> $t {
                for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
                    *a += *b;
                }
                self
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(mut self, rhs: $t) -> $t {
                for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
                    *a -= *b;
                }
                self
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(mut self) -> $t {
                for a in self.coeffs.iter_mut() {
                    *a = -*a;
                }
                self
            }
        }
        impl std::ops::AddAssign for $t {
            fn add_assign(&mut self, rhs: $t) {
                *self = *self + rhs;
            }
        }
        impl std::ops::SubAssign for $t {
            fn sub_assign(&mut self, rhs: $t) {
                *self = *self - rhs;
            }
        }
        impl std::ops::Mul<$crate::multivector::Scalar> for $t {
            type Output = $t;
            fn mul(self, rhs: $crate::multivector::Scalar) -> $t {
                self.scale(rhs)
            }
        }
        impl std::ops::Mul<f64> for $t {
            type Output = $t;
            fn mul(self, rhs: f64) -> $t {
                self.scale(rhs)
            }
        }
        impl std::ops::Mul<$t> for $crate::multivector::Scalar {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                rhs.scale(self)
            }
        }
        impl std::ops::Mul<$t> for f64 {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                rhs.scale(self)
            }
        }
    };
}
pub(crate) use linear_ops;

linear_ops!(Multivector);

impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        self.geometric_product(&rhs)
    }
}

/// Grade-1 element a_o e_o + a1 e1 + a2 e2 + a3 e3 + a_inf e_inf.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct CgaVector {
    pub a_o: Scalar,
    pub a1: Scalar,
    pub a2: Scalar,
    pub a3: Scalar,
    pub a_inf: Scalar,
}

impl CgaVector {
    pub fn new(
        a_o: impl Into<Scalar>,
        a1: impl Into<Scalar>,
        a2: impl Into<Scalar>,
        a3: impl Into<Scalar>,
        a_inf: impl Into<Scalar>,
    ) -> Self {
        Self {
            a_o: a_o.into(),
            a1: a1.into(),
            a2: a2.into(),
            a3: a3.into(),
            a_inf: a_inf.into(),
        }
    }

    pub fn from_array(c: [Scalar; 5]) -> Self {
        Self::new(c[0], c[1], c[2], c[3], c[4])
    }

    pub fn to_array(&self) -> [Scalar; 5] {
        [self.a_o, self.a1, self.a2, self.a3, self.a_inf]
    }

    pub fn e_o() -> Self {
        Self::new(1.0, 0.0, 0.0, 0.0, 0.0)
    }
    pub fn e_inf() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0, 1.0)
    }
    pub fn e1() -> Self {
        Self::new(0.0, 1.0, 0.0, 0.0, 0.0)
    }
    pub fn e2() -> Self {
        Self::new(0.0, 0.0, 1.0, 0.0, 0.0)
    }
    pub fn e3() -> Self {
        Self::new(0.0, 0.0, 0.0, 1.0, 0.0)
    }

    /// Conformal embedding of a Euclidean point: e_o + p + |p|^2/2 e_inf.
    pub fn point(x: f64, y: f64, z: f64) -> Self {
        Self::new(1.0, x, y, z, 0.5 * (x * x + y * y + z * z))
    }

    /// Plane with unit normal direction `n` at signed distance `d`.
    pub fn plane(n: [f64; 3], d: f64) -> Self {
        Self::new(0.0, n[0], n[1], n[2], d)
    }

    pub fn to_multivector(&self) -> Multivector {
        let mut m = Multivector::zero();
        m.coeffs[E1] = self.a1;
        m.coeffs[E2] = self.a2;
        m.coeffs[E3] = self.a3;
        m.coeffs[EP] = -0.5 * self.a_o + self.a_inf;
        m.coeffs[EM] = 0.5 * self.a_o + self.a_inf;
        m
    }

    /// Grade-1 projection of a multivector.
    pub fn from_multivector(m: &Multivector) -> Self {
        let p = m.coeffs[EP];
        let q = m.coeffs[EM];
        Self {
            a_o: q - p,
            a1: m.coeffs[E1],
            a2: m.coeffs[E2],
            a3: m.coeffs[E3],
            a_inf: 0.5 * (p + q),
        }
    }

    pub fn dot(&self, other: &Self) -> Scalar {
        self.a1 * other.a1 + self.a2 * other.a2 + self.a3 * other.a3
            - self.a_o * other.a_inf
            - self.a_inf * other.a_o
    }

    pub fn wedge(&self, other: &Self) -> Multivector {
        let a = self.to_multivector();
        let b = other.to_multivector();
        (a * b - b * a) * 0.5
    }

    pub fn conj(&self) -> Self {
        Self {
            a_o: self.a_o.conj(),
            a1: self.a1.conj(),
            a2: self.a2.conj(),
            a3: self.a3.conj(),
            a_inf: self.a_inf.conj(),
        }
    }

    pub fn scale(&self, s: impl Into<Scalar>) -> Self {
        let s = s.into();
        Self::from_array(self.to_array().map(|c| c * s))
    }

    /// Norm of the orthonormal coefficient vector.
    pub fn norm(&self) -> f64 {
        self.to_multivector().norm()
    }

    pub fn is_point(&self, tol: f64) -> bool {
        let n = self.norm();
        self.dot(self).norm() <= tol * n * n
    }

    pub fn is_plane(&self, tol: f64) -> bool {
        self.a_o.norm() <= tol * self.norm()
    }

    /// Rescales so that the coefficient of largest modulus equals one.
    pub fn normalized_projective(&self) -> Self {
        let arr = self.to_array();
        let pivot = arr.iter().copied().fold(
            ZERO,
            |best, c| if c.norm() > best.norm() { c } else { best },
        );
        if pivot == ZERO {
            return *self;
        }
        self.scale(pivot.inv())
    }
}

impl Add for CgaVector {
    type Output = CgaVector;
    fn add(self, rhs: CgaVector) -> CgaVector {
        let (a, b) = (self.to_array(), rhs.to_array());
        Self::from_array(std::array::from_fn(|i| a[i] + b[i]))
    }
}

impl Sub for CgaVector {
    type Output = CgaVector;
    fn sub(self, rhs: CgaVector) -> CgaVector {
        self + (-rhs)
    }
}

impl Neg for CgaVector {
    type Output = CgaVector;
    fn neg(self) -> CgaVector {
        self.scale(-1.0)
    }
}

impl AddAssign for CgaVector {
    fn add_assign(&mut self, rhs: CgaVector) {
        *self = *self + rhs;
    }
}

impl SubAssign for CgaVector {
    fn sub_assign(&mut self, rhs: CgaVector) {
        *self = *self - rhs;
    }
}

/// Projective distance between two complex lines: the norm of the
/// difference of unit representatives after optimal phase alignment.
/// Close to the angle between the lines for nearby inputs.
pub fn projective_distance(u: &[Scalar], v: &[Scalar]) -> f64 {
    let nu = u.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let nv = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if nu == 0.0 || nv == 0.0 {
        return if nu == nv { 0.0 } else { f64::INFINITY };
    }
    let inner: Scalar = u.iter().zip(v).map(|(a, b)| a.conj() * b).sum();
    let phase = if inner.norm() > 0.0 {
        inner.conj() / inner.norm()
    } else {
        ONE
    };
    u.iter()
        .zip(v)
        .map(|(a, b)| (a / nu - phase * b / nv).norm_sqr())
        .sum::<f64>()
        .sqrt()
}
