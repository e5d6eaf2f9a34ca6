//! Polynomials with even-algebra coefficients and a central indeterminate.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::even::EvenElement;
use crate::multivector::{Scalar, ONE, ZERO};

/// Dense polynomial sum t^i q_i over the even sub-algebra; `coeffs[i]` is
/// q_i. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct EvenPolynomial {
    pub coeffs: Vec<EvenElement>,
}

/// Dense real polynomial; `coeffs[i]` multiplies t^i.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct RealPolynomial {
    pub coeffs: Vec<f64>,
}

impl RealPolynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// Monic quadratic (t - z1)(t - z2); the roots must be real or conjugate.
    pub fn quadratic(z1: Scalar, z2: Scalar) -> Self {
        let s = z1 + z2;
        let p = z1 * z2;
        Self::new(vec![p.re, -s.re, 1.0])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn eval_complex(&self, z: Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        let l = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / l).collect())
    }

    /// Sum of absolute coefficient values.
    pub fn l1_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Quotient and remainder by a nonzero real polynomial.
    pub fn div_rem(&self, d: &RealPolynomial) -> (RealPolynomial, RealPolynomial) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (RealPolynomial::default(), self.clone());
        }
        let mut q = vec![0.0; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd] / d.leading();
            q[k] = c;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                r[k + j] -= c * dj;
            }
            r[k + dd] = 0.0;
        }
        r.truncate(dd);
        (RealPolynomial::new(q), RealPolynomial::new(r))
    }

    /// Largest coefficient deviation between two polynomials, relative to
    /// the larger of their magnitudes.
    pub fn relative_distance(&self, other: &RealPolynomial) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &RealPolynomial, i: usize| p.coeffs.get(i).copied().unwrap_or(0.0);
        let diff = (0..n)
            .map(|i| (get(self, i) - get(other, i)).abs())
            .fold(0.0, f64::max);
        let scale = self
            .coeffs
            .iter()
            .chain(other.coeffs.iter())
            .map(|c| c.abs())
            .fold(0.0, f64::max);
        if scale == 0.0 {
            diff
        } else {
            diff / scale
        }
    }
}

impl Mul for &RealPolynomial {
    type Output = RealPolynomial;
    fn mul(self, rhs: &RealPolynomial) -> RealPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RealPolynomial::default();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RealPolynomial::new(out)
    }
}

impl Mul for RealPolynomial {
    type Output = RealPolynomial;
    fn mul(self, rhs: RealPolynomial) -> RealPolynomial {
        &self * &rhs
    }
}

impl EvenPolynomial {
    /// Builds a polynomial, dropping exactly-zero trailing coefficients.
    pub fn new(mut coeffs: Vec<EvenElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: EvenElement) -> Self {
        Self::new(vec![c])
    }

    /// The monic linear polynomial t - h.
    pub fn linear(h: EvenElement) -> Self {
        Self::new(vec![-h, EvenElement::one()])
    }

    pub fn from_real(p: &RealPolynomial) -> Self {
        Self::new(p.coeffs.iter().map(|&c| EvenElement::scalar(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> EvenElement {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn coeff(&self, i: usize) -> EvenElement {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    /// Reversion of every coefficient.
    pub fn reverse(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.reverse()).collect())
    }

    /// Complex conjugation of every coefficient.
    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(i as f64))
                .collect(),
        )
    }

    /// e * self.
    pub fn mul_left(&self, e: &EvenElement) -> Self {
        Self::new(self.coeffs.iter().map(|c| *e * *c).collect())
    }

    /// self * e.
    pub fn mul_right(&self, e: &EvenElement) -> Self {
        Self::new(self.coeffs.iter().map(|c| *c * *e).collect())
    }

    pub fn scale(&self, s: impl Into<Scalar>) -> Self {
        let s = s.into();
        Self::new(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    /// Evaluation at a central (complex scalar) parameter.
    pub fn eval(&self, z: Scalar) -> EvenElement {
        self.coeffs
            .iter()
            .rev()
            .fold(EvenElement::zero(), |acc, c| acc.scale(z) + *c)
    }

    /// Left evaluation: sum h^i q_i.
    pub fn left_evaluate(&self, h: &EvenElement) -> EvenElement {
        self.coeffs
            .iter()
            .rev()
            .fold(EvenElement::zero(), |acc, c| *h * acc + *c)
    }

    /// Right evaluation: sum q_i h^i.
    pub fn right_evaluate(&self, h: &EvenElement) -> EvenElement {
        self.coeffs
            .iter()
            .rev()
            .fold(EvenElement::zero(), |acc, c| acc * *h + *c)
    }

    /// The reparametrized polynomial C(t + z).
    pub fn shift(&self, z: Scalar) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        // repeated synthetic division yields the Taylor coefficients at z
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let next = c[j + 1];
                c[j] += next.scale(z);
            }
        }
        Self::new(c)
    }

    /// Largest coefficient norm.
    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest imaginary part of any coefficient, relative to `max_norm`.
    pub fn imag_residue(&self) -> f64 {
        let n = self.max_norm();
        if n == 0.0 {
            return 0.0;
        }
        self.coeffs
            .iter()
            .flat_map(|c| c.coeffs.iter())
            .map(|c| c.im.abs())
            .fold(0.0, f64::max)
            / n
    }

    pub fn real_part(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.real_part()).collect())
    }

    /// Drops trailing coefficients below `tol * max_norm`.
    pub fn trim(&self, tol: f64) -> Self {
        let bound = tol * self.max_norm();
        let mut c = self.coeffs.clone();
        while c.last().is_some_and(|x| x.norm() <= bound) {
            c.pop();
        }
        Self { coeffs: c }
    }

    /// Largest coefficient deviation relative to the larger polynomial.
    pub fn relative_distance(&self, other: &EvenPolynomial) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        let diff = (0..n)
            .map(|i| (self.coeff(i) - other.coeff(i)).norm())
            .fold(0.0, f64::max);
        let scale = self.max_norm().max(other.max_norm());
        if scale == 0.0 {
            diff
        } else {
            diff / scale
        }
    }

    /// Division with the quotient on the left: C = Q P + R, deg R < deg P.
    ///
    /// For real P this coincides with [`EvenPolynomial::divide_right`] and
    /// then C(h) = R(h) under left evaluation whenever P(h) = 0.
    pub fn divide_left(&self, p: &EvenPolynomial) -> Result<(EvenPolynomial, EvenPolynomial)> {
        let inv = lead_inverse(p)?;
        self.divide(p, |r_lead| r_lead * inv, |c, pj| c * pj)
    }

    /// Division with the quotient on the right: C = P Q + R, deg R < deg P.
    ///
    /// This is the variant compatible with left evaluation for arbitrary P:
    /// if P(h) = 0 then C(h) = R(h), and t - h is a left factor of C iff
    /// the remainder of division by t - h vanishes.
    pub fn divide_right(&self, p: &EvenPolynomial) -> Result<(EvenPolynomial, EvenPolynomial)> {
        let inv = lead_inverse(p)?;
        self.divide(p, |r_lead| inv * r_lead, |c, pj| pj * c)
    }

    fn divide(
        &self,
        p: &EvenPolynomial,
        quotient_coeff: impl Fn(EvenElement) -> EvenElement,
        product: impl Fn(EvenElement, EvenElement) -> EvenElement,
    ) -> Result<(EvenPolynomial, EvenPolynomial)> {
        let dp = p.degree();
        let mut r = self.coeffs.clone();
        if r.len() <= dp {
            return Ok((EvenPolynomial::zero(), self.clone()));
        }
        let mut q = vec![EvenElement::zero(); r.len() - dp];
        for k in (0..q.len()).rev() {
            let c = quotient_coeff(r[k + dp]);
            q[k] = c;
            for (j, pj) in p.coeffs.iter().enumerate() {
                r[k + j] -= product(c, *pj);
            }
            r[k + dp] = EvenElement::zero();
        }
        r.truncate(dp);
        Ok((EvenPolynomial::new(q), EvenPolynomial::new(r)))
    }

    /// Whether every coefficient is a real multiple of the identity.
    pub fn is_real_scalar(&self, tol: f64) -> bool {
        let bound = tol * self.max_norm().max(1.0);
        self.coeffs.iter().all(|c| {
            c.scalar_part().im.abs() <= bound
                && (*c - EvenElement::scalar(c.scalar_part())).norm() <= bound
        })
    }
}

fn lead_inverse(p: &EvenPolynomial) -> Result<EvenElement> {
    if p.is_zero() {
        return Err(Error::NonInvertibleLeadingCoefficient);
    }
    p.leading()
        .try_inverse(1e-12)
        .ok_or(Error::NonInvertibleLeadingCoefficient)
}

impl Add for &EvenPolynomial {
    type Output = EvenPolynomial;
    fn add(self, rhs: &EvenPolynomial) -> EvenPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        EvenPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &EvenPolynomial {
    type Output = EvenPolynomial;
    fn sub(self, rhs: &EvenPolynomial) -> EvenPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        EvenPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &EvenPolynomial {
    type Output = EvenPolynomial;
    fn neg(self) -> EvenPolynomial {
        self.scale(-ONE)
    }
}

impl Mul for &EvenPolynomial {
    type Output = EvenPolynomial;
    fn mul(self, rhs: &EvenPolynomial) -> EvenPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return EvenPolynomial::zero();
        }
        let mut out = vec![EvenElement::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += *a * *b;
            }
        }
        EvenPolynomial::new(out)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for EvenPolynomial {
            type Output = EvenPolynomial;
            fn $m(self, rhs: EvenPolynomial) -> EvenPolynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

/// Norm polynomial C C~ of a spinor polynomial.
///
/// Checks that C~ C agrees with C C~ and that both are real scalar
/// polynomials, with residues measured against sum |q_i|^2. Trailing
/// coefficients below the same bound are dropped.
pub fn norm_poly(c: &EvenPolynomial, tol: f64) -> Result<RealPolynomial> {
    let scale: f64 = c.coeffs.iter().map(|q| q.norm().powi(2)).sum();
    if scale == 0.0 {
        return Err(Error::NotSpinor { residue: 0.0 });
    }
    let rev = c.reverse();
    let left = c * &rev;
    let right = &rev * c;
    let mut residue: f64 = 0.0;
    for i in 0..left.coeffs.len().max(right.coeffs.len()) {
        let a = left.coeff(i);
        let b = right.coeff(i);
        let s = a.scalar_part();
        residue = residue
            .max((a - b).norm())
            .max((a - EvenElement::scalar(s)).norm())
            .max(s.im.abs());
    }
    let residue = residue / scale;
    if residue > tol {
        return Err(Error::NotSpinor { residue });
    }
    let mut coeffs: Vec<f64> = left.coeffs.iter().map(|q| q.scalar_part().re).collect();
    while coeffs.last().is_some_and(|x| x.abs() <= tol * scale) {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        return Err(Error::NotSpinor { residue });
    }
    Ok(RealPolynomial::new(coeffs))
}

/// A polynomial together with its certified real norm polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorPolynomial {
    pub poly: EvenPolynomial,
    pub norm: RealPolynomial,
}

impl SpinorPolynomial {
    pub fn new(poly: EvenPolynomial, tol: f64) -> Result<Self> {
        let norm = norm_poly(&poly, tol)?;
        Ok(Self { poly, norm })
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Quaternion;

    fn quat(q: Quaternion) -> EvenElement {
        q.to_even()
    }

    fn family_example(a: f64, b: f64) -> EvenPolynomial {
        let e1 = EvenElement::eps1();
        EvenPolynomial::new(vec![
            EvenElement::one() + e1 * quat(Quaternion::j()).scale(a),
            e1 * quat(Quaternion::i()).scale(b),
            EvenElement::one(),
        ])
    }

    #[test]
    fn family_example_norm_is_square() {
        let n = norm_poly(&family_example(2.0, 1.0), 1e-12).unwrap();
        assert_eq!(n, RealPolynomial::new(vec![1.0, 0.0, 2.0, 0.0, 1.0]));
    }

    #[test]
    fn family_example_reexpansion() {
        // (t + k)(t - k + eps1 i) for a = b = 1
        let k = quat(Quaternion::k());
        let f1 = EvenPolynomial::linear(-k);
        let f2 = EvenPolynomial::linear(k - EvenElement::eps1() * quat(Quaternion::i()));
        assert!((&f1 * &f2).relative_distance(&family_example(1.0, 1.0)) < 1e-15);
    }

    #[test]
    fn eps3_quadratic_norm() {
        let c = EvenPolynomial::new(vec![
            EvenElement::eps3(),
            EvenElement::zero(),
            EvenElement::one(),
        ]);
        let n = norm_poly(&c, 1e-12).unwrap();
        assert_eq!(n, RealPolynomial::new(vec![-1.0, 0.0, 0.0, 0.0, 1.0]));
        assert_eq!(
            norm_poly(&EvenPolynomial::constant(EvenElement::one()), 1e-12).unwrap(),
            RealPolynomial::constant(1.0)
        );
    }

    #[test]
    fn non_spinor_rejected() {
        let c = EvenPolynomial::new(vec![
            EvenElement::one() + quat(Quaternion::i()).scale(0.5) + EvenElement::eps3(),
            EvenElement::one(),
        ]);
        assert!(matches!(norm_poly(&c, 1e-10), Err(Error::NotSpinor { .. })));
    }

    #[test]
    fn left_and_right_evaluation() {
        let q1 = EvenElement::blade(3, 1.0);
        let h = EvenElement::blade(5, 1.0);
        let c = EvenPolynomial::new(vec![EvenElement::one(), q1]);
        assert_ne!(c.left_evaluate(&h), c.right_evaluate(&h));
        let z = EvenElement::scalar(0.7);
        assert_eq!(c.left_evaluate(&z), c.right_evaluate(&z));
        assert_eq!(c.left_evaluate(&z), c.eval(Scalar::new(0.7, 0.0)));
        let lin = EvenPolynomial::linear(h);
        assert_eq!(lin.left_evaluate(&h), EvenElement::zero());
    }

    #[test]
    fn shift_matches_evaluation() {
        let c = family_example(2.0, 1.0);
        let z = Scalar::new(0.4, 0.0);
        let s = c.shift(z);
        for t in [-1.0, 0.0, 0.3, 2.0] {
            let t = Scalar::new(t, 0.0);
            assert!((s.eval(t) - c.eval(t + z)).norm() < 1e-13);
        }
    }

    #[test]
    fn division_by_itself() {
        let c = family_example(1.0, 3.0);
        let (q, r) = c.divide_left(&c).unwrap();
        assert!(r.is_zero() || r.max_norm() < 1e-15);
        assert!(q.relative_distance(&EvenPolynomial::constant(EvenElement::one())) < 1e-15);
    }

    #[test]
    fn division_by_real_quadratic_interpolates() {
        let c = family_example(2.0, 1.0);
        let (z1, z2) = (Scalar::new(0.0, 1.0), Scalar::new(0.0, -1.0));
        let m = EvenPolynomial::from_real(&RealPolynomial::quadratic(z1, z2));
        let (_, r) = c.divide_left(&m).unwrap();
        // R = ((t - z1) n2 - (t - z2) n1) / (z2 - z1)
        let (n1, n2) = (c.eval(z1), c.eval(z2));
        assert!((r.eval(z1) - n1).norm() < 1e-14);
        assert!((r.eval(z2) - n2).norm() < 1e-14);
    }

    #[test]
    fn null_lead_division_rejected() {
        let p = EvenPolynomial::new(vec![EvenElement::one(), EvenElement::eps1()]);
        let c = family_example(1.0, 1.0);
        assert_eq!(
            c.divide_left(&p),
            Err(Error::NonInvertibleLeadingCoefficient)
        );
    }

    #[test]
    fn real_division() {
        let p = RealPolynomial::new(vec![1.0, 2.0, 3.0, 4.0]);
        let d = RealPolynomial::new(vec![-1.0, 1.0]);
        let (q, r) = p.div_rem(&d);
        assert_eq!(r.coeffs, vec![10.0]);
        assert_eq!(q.coeffs, vec![9.0, 7.0, 4.0]);
    }
}
