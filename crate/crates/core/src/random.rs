//! Seeded sampling of algebra elements and spinor polynomials.
//!
//! Every random choice in the crate goes through a [`ChaCha8Rng`] built by
//! [`rng`], so results depend only on the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::even::{vector_wedge, EvenElement};
use crate::multivector::{CgaVector, Scalar};
use crate::poly::EvenPolynomial;
use crate::quaternion::Quaternion;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut SeededRng) -> f64 {
    rng.random_range(-1.0..=1.0)
}

/// Vector with null-basis coordinates uniform in [-1, 1].
pub fn vector(rng: &mut SeededRng) -> CgaVector {
    CgaVector::new(
        uniform(rng),
        uniform(rng),
        uniform(rng),
        uniform(rng),
        uniform(rng),
    )
}

/// Even element with real orthonormal coefficients uniform in [-1, 1].
pub fn even_element(rng: &mut SeededRng) -> EvenElement {
    EvenElement {
        coeffs: std::array::from_fn(|_| Scalar::new(uniform(rng), 0.0)),
    }
}

/// Even element with complex coefficients.
pub fn complex_even_element(rng: &mut SeededRng) -> EvenElement {
    EvenElement {
        coeffs: std::array::from_fn(|_| Scalar::new(uniform(rng), uniform(rng))),
    }
}

/// Real quaternion with coefficients uniform in [-1, 1].
pub fn quaternion(rng: &mut SeededRng) -> Quaternion {
    Quaternion::new(uniform(rng), uniform(rng), uniform(rng), uniform(rng))
}

/// Pure (vectorial) real quaternion.
pub fn pure_quaternion(rng: &mut SeededRng) -> Quaternion {
    Quaternion::new(0.0, uniform(rng), uniform(rng), uniform(rng))
}

/// h = alpha + e ^ f for random real alpha, e, f. Then t - h is a spinor
/// polynomial with norm (t - alpha)^2 - (e ^ f)^2.
pub fn linear_spinor_element(rng: &mut SeededRng) -> EvenElement {
    let alpha = uniform(rng);
    let e = vector(rng);
    let f = vector(rng);
    EvenElement::scalar(alpha) + vector_wedge(&e, &f)
}

/// Spinor of the form (a b) for random real vectors a, b; its product with
/// its reverse is the real scalar a^2 b^2.
pub fn versor(rng: &mut SeededRng) -> EvenElement {
    loop {
        let a = vector(rng);
        let b = vector(rng);
        let g = crate::even::vector_product(&a, &b);
        if (a.dot(&a) * b.dot(&b)).norm() > 0.05 {
            return g;
        }
    }
}

/// h = a b for a random point a and a random plane b through it. Then
/// t - h has norm t^2 (a transversion-type elementary motion; a
/// translation when a is replaced by e_inf).
pub fn point_plane_element(rng: &mut SeededRng) -> EvenElement {
    let p = [uniform(rng), uniform(rng), uniform(rng)];
    let n = [uniform(rng), uniform(rng), uniform(rng)];
    let a = CgaVector::point(p[0], p[1], p[2]);
    let b = CgaVector::plane(n, p[0] * n[0] + p[1] * n[1] + p[2] * n[2]);
    crate::even::vector_product(&a, &b)
}

/// Product of `degree` random monic linear spinor factors.
pub fn spinor_polynomial(rng: &mut SeededRng, degree: usize) -> EvenPolynomial {
    (0..degree).fold(EvenPolynomial::constant(EvenElement::one()), |acc, _| {
        &acc * &EvenPolynomial::linear(linear_spinor_element(rng))
    })
}
