//! The even sub-algebra: 16 even-grade blades, stored over the orthonormal
//! basis and exchanged through a null-basis view.

use std::ops::Mul;
use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::multivector::{
    grade_of, linear_ops, reverse_sign, CgaVector, Multivector, Scalar, E1, E2, E3, ONE, SIGNS,
    ZERO,
};

/// Orthonormal even blade masks, in ascending order. Slot `k` of an
/// [`EvenElement`] holds the coefficient of blade `EVEN_MASKS[k]`.
pub const EVEN_MASKS: [usize; 16] = [0, 3, 5, 6, 9, 10, 12, 15, 17, 18, 20, 23, 24, 27, 29, 30];

const fn mask_slots() -> [usize; 32] {
    let mut t = [usize::MAX; 32];
    let mut k = 0;
    while k < 16 {
        t[EVEN_MASKS[k]] = k;
        k += 1;
    }
    t
}

const SLOT_OF_MASK: [usize; 32] = mask_slots();

/// Names of the null-basis wire slots, in wire order.
pub const NULL_SLOT_NAMES: [&str; 16] = [
    "1", "e12", "e13", "e23", "e1o", "e2o", "e3o", "e1inf", "e2inf", "e3inf", "eoinf", "e123o",
    "e123inf", "e12oinf", "e13oinf", "e23oinf",
];

/// Element of the even sub-algebra CGA+.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvenElement {
    /// Coefficients over [`EVEN_MASKS`].
    pub coeffs: [Scalar; 16],
}

impl Default for EvenElement {
    fn default() -> Self {
        Self::zero()
    }
}

struct BasisTables {
    /// Column k: orthonormal coefficients of null-basis wire slot k.
    null_to_ortho: [[f64; 16]; 16],
    ortho_to_null: [[f64; 16]; 16],
    /// Column k: orthonormal coefficients of four-quaternion basis element k
    /// (index 4*j + u for eps_j times quaternion unit u, eps_0 = 1).
    quat_to_ortho: [[f64; 16]; 16],
    ortho_to_quat: [[f64; 16]; 16],
}

fn tables() -> &'static BasisTables {
    static TABLES: OnceLock<BasisTables> = OnceLock::new();
    TABLES.get_or_init(build_tables)
}

fn real_coeffs(e: &EvenElement) -> [f64; 16] {
    e.coeffs.map(|c| {
        debug_assert!(c.im == 0.0);
        c.re
    })
}

fn build_tables() -> BasisTables {
    let o = CgaVector::e_o().to_multivector();
    let inf = CgaVector::e_inf().to_multivector();
    let e = |m| Multivector::blade(m);
    let wedge = |a: Multivector, b: Multivector| (a * b - b * a) * 0.5;
    let oinf = wedge(o, inf);
    let e123 = Multivector::e123();
    let null_blades = [
        Multivector::scalar(1.0),
        e(E1 | E2),
        e(E1 | E3),
        e(E2 | E3),
        e(E1) * o,
        e(E2) * o,
        e(E3) * o,
        e(E1) * inf,
        e(E2) * inf,
        e(E3) * inf,
        oinf,
        e123 * o,
        e123 * inf,
        e(E1 | E2) * oinf,
        e(E1 | E3) * oinf,
        e(E2 | E3) * oinf,
    ];
    let mut null_to_ortho = [[0.0; 16]; 16];
    for (k, b) in null_blades.iter().enumerate() {
        let c = real_coeffs(&EvenElement::from_multivector_unchecked(b));
        for r in 0..16 {
            null_to_ortho[r][k] = c[r];
        }
    }

    let units = [
        EvenElement::one(),
        EvenElement::quat_i(),
        EvenElement::quat_j(),
        EvenElement::quat_k(),
    ];
    let eps = [
        EvenElement::one(),
        EvenElement::eps1(),
        EvenElement::eps2(),
        EvenElement::eps3(),
    ];
    let mut quat_to_ortho = [[0.0; 16]; 16];
    for (j, ej) in eps.iter().enumerate() {
        for (u, q) in units.iter().enumerate() {
            let c = real_coeffs(&(*ej * *q));
            for r in 0..16 {
                quat_to_ortho[r][4 * j + u] = c[r];
            }
        }
    }
    BasisTables {
        ortho_to_null: invert16(&null_to_ortho),
        null_to_ortho,
        ortho_to_quat: invert16(&quat_to_ortho),
        quat_to_ortho,
    }
}

/// Gauss-Jordan inverse with partial pivoting. The basis-change matrices
/// have dyadic entries, so the result is exact in binary floating point.
fn invert16(m: &[[f64; 16]; 16]) -> [[f64; 16]; 16] {
    let mut a = *m;
    let mut inv = [[0.0; 16]; 16];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for col in 0..16 {
        let piv = (col..16)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap();
        assert!(a[piv][col] != 0.0, "basis change is singular");
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col];
        for k in 0..16 {
            a[col][k] /= p;
            inv[col][k] /= p;
        }
        for r in 0..16 {
            if r != col && a[r][col] != 0.0 {
                let f = a[r][col];
                for k in 0..16 {
                    a[r][k] -= f * a[col][k];
                    inv[r][k] -= f * inv[col][k];
                }
            }
        }
    }
    inv
}

fn apply(m: &[[f64; 16]; 16], v: &[Scalar; 16]) -> [Scalar; 16] {
    std::array::from_fn(|r| {
        m[r].iter()
            .zip(v.iter())
            .filter(|(a, _)| **a != 0.0)
            .map(|(a, b)| b * *a)
            .sum()
    })
}

impl EvenElement {
    pub const fn zero() -> Self {
        Self { coeffs: [ZERO; 16] }
    }

    pub fn scalar(s: impl Into<Scalar>) -> Self {
        let mut e = Self::zero();
        e.coeffs[0] = s.into();
        e
    }

    pub fn one() -> Self {
        Self::scalar(1.0)
    }

    /// Quaternion unit i, embedded as -e23.
    pub fn quat_i() -> Self {
        Self::blade(E2 | E3, -1.0)
    }
    /// Quaternion unit j, embedded as e13.
    pub fn quat_j() -> Self {
        Self::blade(E1 | E3, 1.0)
    }
    /// Quaternion unit k, embedded as -e12.
    pub fn quat_k() -> Self {
        Self::blade(E1 | E2, -1.0)
    }

    /// eps1 = e123 e_inf.
    pub fn eps1() -> Self {
        Self::from_multivector_unchecked(&(Multivector::e123() * Multivector::e_inf()))
    }
    /// eps2 = e123 e_o.
    pub fn eps2() -> Self {
        Self::from_multivector_unchecked(&(Multivector::e123() * Multivector::e_o()))
    }
    /// eps3 = e_inf e_o + 1, which equals e+ e-.
    pub fn eps3() -> Self {
        Self::from_multivector_unchecked(
            &(Multivector::e_inf() * Multivector::e_o() + Multivector::scalar(1.0)),
        )
    }

    /// Orthonormal blade `mask` (must be even) with coefficient `c`.
    pub fn blade(mask: usize, c: impl Into<Scalar>) -> Self {
        let slot = SLOT_OF_MASK[mask];
        assert!(slot != usize::MAX, "blade {mask:#b} is odd");
        let mut e = Self::zero();
        e.coeffs[slot] = c.into();
        e
    }

    /// Coefficient of the orthonormal blade `mask`.
    pub fn coeff(&self, mask: usize) -> Scalar {
        match SLOT_OF_MASK[mask] {
            usize::MAX => ZERO,
            s => self.coeffs[s],
        }
    }

    pub fn from_coeffs(coeffs: [Scalar; 16]) -> Result<Self> {
        check_finite(&coeffs)?;
        Ok(Self { coeffs })
    }

    /// Builds an element from null-basis coefficients in wire order.
    pub fn from_null_coeffs(null: [Scalar; 16]) -> Result<Self> {
        check_finite(&null)?;
        Ok(Self {
            coeffs: apply(&tables().null_to_ortho, &null),
        })
    }

    /// Null-basis coefficients in wire order.
    pub fn null_coeffs(&self) -> [Scalar; 16] {
        apply(&tables().ortho_to_null, &self.coeffs)
    }

    pub fn to_multivector(&self) -> Multivector {
        let mut m = Multivector::zero();
        for (k, &c) in self.coeffs.iter().enumerate() {
            m.coeffs[EVEN_MASKS[k]] = c;
        }
        m
    }

    /// Even projection; the odd part is dropped.
    pub fn from_multivector_unchecked(m: &Multivector) -> Self {
        Self {
            coeffs: std::array::from_fn(|k| m.coeffs[EVEN_MASKS[k]]),
        }
    }

    /// Even projection, rejecting inputs with odd residue above
    /// `tol * |m|`.
    pub fn from_multivector(m: &Multivector, tol: f64) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let odd = m.odd_part().norm();
        if odd > tol * m.norm() {
            return Err(Error::InvalidInput(format!(
                "multivector has odd residue {odd:e}"
            )));
        }
        Ok(Self::from_multivector_unchecked(m))
    }

    pub fn geometric_product(&self, other: &Self) -> Self {
        let mut out = [ZERO; 16];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == ZERO {
                continue;
            }
            let a = EVEN_MASKS[i];
            let row = &SIGNS[a];
            for (j, &y) in other.coeffs.iter().enumerate() {
                if y == ZERO {
                    continue;
                }
                let b = EVEN_MASKS[j];
                out[SLOT_OF_MASK[a ^ b]] += x * y * row[b];
            }
        }
        Self { coeffs: out }
    }

    pub fn reverse(&self) -> Self {
        let mut out = *self;
        for (k, c) in out.coeffs.iter_mut().enumerate() {
            *c *= reverse_sign(grade_of(EVEN_MASKS[k]));
        }
        out
    }

    /// Complex conjugation of every coefficient.
    pub fn conj(&self) -> Self {
        Self {
            coeffs: self.coeffs.map(|c| c.conj()),
        }
    }

    pub fn grade_part(&self, k: u32) -> Self {
        let mut out = Self::zero();
        for (s, &c) in self.coeffs.iter().enumerate() {
            if grade_of(EVEN_MASKS[s]) == k {
                out.coeffs[s] = c;
            }
        }
        out
    }

    pub fn scalar_part(&self) -> Scalar {
        self.coeffs[0]
    }

    pub fn scale(&self, s: impl Into<Scalar>) -> Self {
        let s = s.into();
        Self {
            coeffs: self.coeffs.map(|c| c * s),
        }
    }

    /// Frobenius norm over the orthonormal coefficients.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }

    /// Largest imaginary part relative to the element's magnitude.
    pub fn imag_residue(&self) -> f64 {
        let n = self.norm();
        if n == 0.0 {
            return 0.0;
        }
        self.coeffs.iter().map(|c| c.im.abs()).fold(0.0, f64::max) / n
    }

    /// Real part of every coefficient.
    pub fn real_part(&self) -> Self {
        Self {
            coeffs: self.coeffs.map(|c| Scalar::new(c.re, 0.0)),
        }
    }

    /// Whether q q~ = q~ q is a scalar, tested at relative tolerance.
    pub fn is_study(&self, tol: f64) -> Result<bool> {
        let n2 = self.nonzero_norm()?.powi(2);
        let qr = *self * self.reverse();
        let rq = self.reverse() * *self;
        let commute = (qr - rq).norm();
        let non_scalar = (qr - Self::scalar(qr.scalar_part())).norm();
        Ok(commute <= tol * n2 && non_scalar <= tol * n2)
    }

    /// Whether the scalar part of q q~ vanishes, tested at relative tolerance.
    pub fn is_null(&self, tol: f64) -> Result<bool> {
        let n2 = self.nonzero_norm()?.powi(2);
        Ok((*self * self.reverse()).scalar_part().norm() <= tol * n2)
    }

    fn nonzero_norm(&self) -> Result<f64> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroElement);
        }
        if !n.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(n)
    }

    /// Matrix of x -> self * x over orthonormal coefficients.
    pub fn left_mul_matrix(&self) -> DMatrix<Scalar> {
        DMatrix::from_fn(16, 16, |r, c| {
            let a = EVEN_MASKS[c];
            (0..16)
                .find(|&s| EVEN_MASKS[s] ^ a == EVEN_MASKS[r])
                .map(|s| self.coeffs[s] * SIGNS[EVEN_MASKS[s]][a])
                .unwrap_or(ZERO)
        })
    }

    /// Matrix of x -> x * self over orthonormal coefficients.
    pub fn right_mul_matrix(&self) -> DMatrix<Scalar> {
        DMatrix::from_fn(16, 16, |r, c| {
            let a = EVEN_MASKS[c];
            (0..16)
                .find(|&s| EVEN_MASKS[s] ^ a == EVEN_MASKS[r])
                .map(|s| self.coeffs[s] * SIGNS[a][EVEN_MASKS[s]])
                .unwrap_or(ZERO)
        })
    }

    /// Two-sided inverse, if it exists and is well conditioned.
    ///
    /// Spinors (q q~ a nonzero scalar) are inverted in closed form; other
    /// elements go through an LU solve that is then checked on both sides.
    pub fn try_inverse(&self, tol: f64) -> Option<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return None;
        }
        let rev = self.reverse();
        let qr = *self * rev;
        let s = qr.scalar_part();
        if (qr - Self::scalar(s)).norm() <= tol * n * n && s.norm() > tol.sqrt() * n * n {
            let inv = rev.scale(s.inv());
            if self.check_inverse(&inv, tol) {
                return Some(inv);
            }
        }
        let lu = self.left_mul_matrix().lu();
        let mut rhs = DVector::from_element(16, ZERO);
        rhs[0] = ONE;
        let x = lu.solve(&rhs)?;
        let inv = Self {
            coeffs: std::array::from_fn(|k| x[k]),
        };
        if !inv.norm().is_finite() || inv.norm() * n > 1.0 / tol.sqrt() {
            return None;
        }
        self.check_inverse(&inv, tol).then_some(inv)
    }

    fn check_inverse(&self, inv: &Self, tol: f64) -> bool {
        let one = Self::one();
        let scale = 1.0 + self.norm() * inv.norm();
        (*self * *inv - one).norm() <= tol.sqrt() * scale
            && (*inv * *self - one).norm() <= tol.sqrt() * scale
    }
}

fn check_finite(c: &[Scalar]) -> Result<()> {
    if c.iter().all(|x| x.re.is_finite() && x.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

linear_ops!(EvenElement);

impl Mul for EvenElement {
    type Output = EvenElement;
    fn mul(self, rhs: EvenElement) -> EvenElement {
        self.geometric_product(&rhs)
    }
}

/// Grade-1 part of q x q~.
///
/// Fails with `NotAVersorAction` if the product has other grades above
/// `tol * |q|^2 * |x|`.
pub fn sandwich(q: &EvenElement, x: &CgaVector, tol: f64) -> Result<CgaVector> {
    let qm = q.to_multivector();
    let y = qm * x.to_multivector() * qm.reverse();
    let vec = y.grade_part(1);
    let residue = (y - vec).norm();
    let scale = q.norm().powi(2) * x.norm();
    if residue > tol * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::NotAVersorAction {
            residue: residue / scale,
        });
    }
    Ok(CgaVector::from_multivector(&vec))
}

/// Product of two vectors as an even element.
pub fn vector_product(a: &CgaVector, b: &CgaVector) -> EvenElement {
    EvenElement::from_multivector_unchecked(&(a.to_multivector() * b.to_multivector()))
}

/// Wedge of two vectors as an even element.
pub fn vector_wedge(a: &CgaVector, b: &CgaVector) -> EvenElement {
    EvenElement::from_multivector_unchecked(&a.wedge(b))
}

pub(crate) fn quat_to_ortho() -> &'static [[f64; 16]; 16] {
    &tables().quat_to_ortho
}

pub(crate) fn ortho_to_quat() -> &'static [[f64; 16]; 16] {
    &tables().ortho_to_quat
}

pub(crate) fn apply_table(m: &[[f64; 16]; 16], v: &[Scalar; 16]) -> [Scalar; 16] {
    apply(m, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> EvenElement {
        EvenElement {
            coeffs: std::array::from_fn(|k| {
                Scalar::new(0.3 * k as f64 - 1.0, 0.1 * (k % 3) as f64)
            }),
        }
    }

    #[test]
    fn null_round_trip_is_exact() {
        let e = sample();
        let back = EvenElement::from_null_coeffs(e.null_coeffs()).unwrap();
        assert!((back - e).norm() <= 1e-14);
    }

    #[test]
    fn null_slots_match_their_blades() {
        let mut slot = [ZERO; 16];
        slot[10] = ONE;
        let oinf = EvenElement::from_null_coeffs(slot).unwrap();
        let w = CgaVector::e_o().wedge(&CgaVector::e_inf());
        assert_eq!(oinf.to_multivector(), w);
        let mut slot = [ZERO; 16];
        slot[12] = ONE;
        assert_eq!(
            EvenElement::from_null_coeffs(slot).unwrap(),
            EvenElement::eps1()
        );
    }

    #[test]
    fn product_matches_full_algebra() {
        let a = sample();
        let b = sample().reverse().scale(Scalar::new(0.5, -1.0));
        let full = a.to_multivector() * b.to_multivector();
        assert!(((a * b).to_multivector() - full).norm() < 1e-13);
    }

    #[test]
    fn eps3_has_no_scalar_part() {
        let e3 = EvenElement::eps3();
        assert_eq!(e3.grade_part(0), EvenElement::zero());
        let w = CgaVector::e_inf().wedge(&CgaVector::e_o());
        assert_eq!(e3.grade_part(2).to_multivector(), w);
        assert_eq!(e3, EvenElement::blade(24, 1.0));
    }

    #[test]
    fn reverse_of_eps1() {
        assert_eq!(EvenElement::eps1().reverse(), EvenElement::eps1());
    }

    #[test]
    fn study_and_null_predicates() {
        let one = EvenElement::one();
        assert!(one.is_study(1e-10).unwrap());
        assert!(!one.is_null(1e-10).unwrap());
        let e1 = EvenElement::eps1();
        assert!(e1.is_study(1e-10).unwrap());
        assert!(e1.is_null(1e-10).unwrap());
        // (1+eps3)(1+eps3)~ = (1+eps3)(1-eps3) = 0
        let q = one + EvenElement::eps3();
        assert!(q.is_study(1e-10).unwrap());
        assert!(q.is_null(1e-10).unwrap());
        assert_eq!(EvenElement::zero().is_null(1e-10), Err(Error::ZeroElement));
    }

    #[test]
    fn inverse_of_generic_element() {
        let a = sample();
        let inv = a.try_inverse(1e-12).unwrap();
        assert!((a * inv - EvenElement::one()).norm() < 1e-10);
        assert!(EvenElement::eps1().try_inverse(1e-12).is_none());
    }

    #[test]
    fn multiplication_matrices() {
        let a = sample();
        let b = sample().conj();
        let bv = DVector::from_column_slice(&b.coeffs);
        let l = a.left_mul_matrix() * &bv;
        let r = b.right_mul_matrix() * DVector::from_column_slice(&a.coeffs);
        let ab = a * b;
        for k in 0..16 {
            assert!((l[k] - ab.coeffs[k]).norm() < 1e-13);
            assert!((r[k] - ab.coeffs[k]).norm() < 1e-13);
        }
    }

    #[test]
    fn sandwich_identity_and_rotation() {
        let x = CgaVector::point(1.0, 2.0, 3.0);
        assert_eq!(sandwich(&EvenElement::one(), &x, 1e-12).unwrap(), x);
        let th = 0.7_f64;
        // exp(th e12 / 2) maps e1 to cos(th) e1 - sin(th) e2 under q x q~
        let q = EvenElement::scalar((th / 2.0).cos()) + EvenElement::blade(3, (th / 2.0).sin());
        let y = sandwich(&q, &CgaVector::e1(), 1e-12).unwrap();
        // oracle: rotation matrix for angle -th applied to (1, 0)
        let (c, s) = ((-th).cos(), (-th).sin());
        let rot = [[c, -s], [s, c]];
        let expect = [rot[0][0], rot[1][0]];
        assert!((y.a1.re - expect[0]).abs() < 1e-14);
        assert!((y.a2.re - expect[1]).abs() < 1e-14);
    }

    #[test]
    fn sandwich_with_eps1_projects_to_infinity() {
        let x = CgaVector::new(2.0, 0.3, -1.0, 0.5, 0.7);
        let y = sandwich(&EvenElement::eps1(), &x, 1e-12).unwrap();
        let d = y - CgaVector::e_inf().scale(y.a_inf);
        assert!(d.norm() < 1e-14);
        // eps1 x eps1 = 2 x_o e_inf
        assert!((y.a_inf - Scalar::new(4.0, 0.0)).norm() < 1e-14);
    }
}
