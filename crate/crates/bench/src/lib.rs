//! Seeded inputs shared by the benchmarks.

use spinor_factor::random;
use spinor_factor::{EvenElement, EvenPolynomial};

pub const SEED: u64 = 2024;

/// Pairs of random even elements.
pub fn element_pairs(count: usize) -> Vec<(EvenElement, EvenElement)> {
    let mut rng = random::rng(SEED);
    (0..count)
        .map(|_| {
            (
                random::even_element(&mut rng),
                random::even_element(&mut rng),
            )
        })
        .collect()
}

/// Random spinor polynomials of the given degree.
pub fn spinor_polynomials(count: usize, degree: usize) -> Vec<EvenPolynomial> {
    let mut rng = random::rng(SEED + degree as u64);
    (0..count)
        .map(|_| random::spinor_polynomial(&mut rng, degree))
        .collect()
}
