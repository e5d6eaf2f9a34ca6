//! Linear cofactors that make a spinor polynomial factorizable.
//!
//! For a spinor polynomial P and generic vectors e, f the product
//! C = P H with H = t - e ^ f has a left factor whose norm is H H~ and a
//! right factor whose norm is a quadratic factor of P P~. Repeating the
//! construction yields a real polynomial R, a product of norms H H~, such
//! that P R splits into linear factors.

use serde::{Deserialize, Serialize};

use crate::annihilator::Side;
use crate::error::{Error, Result};
use crate::even::{vector_wedge, EvenElement};
use crate::factor::{
    factorize_all, left_factor, right_factor, verify, FactorOptions, Factorization, LinearFactor,
    Status, DEFAULT_TOL, VERIFY_TOL,
};
use crate::multivector::{CgaVector, Scalar};
use crate::poly::{norm_poly, EvenPolynomial, RealPolynomial};
use crate::random;
use crate::roots::{find_roots, orderings, QuadraticFactor, RootSet};

/// Default number of samples for [`find_cofactor`].
pub const DEFAULT_MAX_ATTEMPTS: usize = 20;
/// Rejection threshold for |e . f| and for root separation.
pub const GENERIC_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CofactorResult {
    /// H = t - e ^ f.
    pub h: EvenPolynomial,
    pub e: CgaVector,
    pub f: CgaVector,
    /// Left factor of the monic part of P H with norm H H~.
    pub left: LinearFactor,
    /// Right factor of P H with norm a quadratic factor of P P~.
    pub right: LinearFactor,
    /// A complete factorization of P H when one exists.
    pub product_factorization: Option<Factorization>,
    /// Number of samples drawn, including the accepted one.
    pub attempts: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealCofactorResult {
    /// R = prod H_k H_k~.
    pub r: RealPolynomial,
    /// The accumulated cofactors H_1, H_2, ...
    pub cofactors: Vec<EvenPolynomial>,
    /// Verified factorization of P R.
    pub factorization: Factorization,
}

/// Splits off an invertible leading coefficient: P = L P'.
fn monic_part(p: &EvenPolynomial) -> Result<(EvenElement, EvenPolynomial)> {
    if p.degree() == 0 {
        return Err(Error::InvalidInput(
            "polynomial must have degree at least 1".into(),
        ));
    }
    if p.imag_residue() > 0.0 {
        return Err(Error::InvalidInput("coefficients must be real".into()));
    }
    let lead = p.leading();
    let inv = lead
        .try_inverse(1e-12)
        .ok_or(Error::NonInvertibleLeadingCoefficient)?;
    Ok((lead, p.mul_left(&inv)))
}

fn min_separation(a: &[Scalar], b: &[Scalar]) -> f64 {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| (*x - *y).norm()))
        .fold(f64::INFINITY, f64::min)
}

/// Quadratic factors of the norm of P, taken from every pairing.
fn candidate_quadratics(roots: &RootSet) -> Vec<QuadraticFactor> {
    let mut out: Vec<QuadraticFactor> = Vec::new();
    for seq in orderings(roots, 24) {
        for q in seq {
            if !out.contains(&q) {
                out.push(q);
            }
        }
    }
    out
}

/// A complete factorization of C over all orderings, if any.
fn full_factorization(c: &EvenPolynomial, seed: u64) -> Option<Factorization> {
    let opts = FactorOptions {
        all_orderings: true,
        seed,
        ..FactorOptions::default()
    };
    let report = factorize_all(c, &opts).ok()?;
    if report.status == Status::NoFactorization {
        return None;
    }
    report.factorizations.into_iter().next()
}

/// Samples H = t - e ^ f until P H has a left and a right linear factor.
pub fn find_cofactor(p: &EvenPolynomial, seed: u64, max_attempts: usize) -> Result<CofactorResult> {
    let (_, monic) = monic_part(p)?;
    let norm = norm_poly(&monic, 1e-9)?;
    let roots = find_roots(&norm, DEFAULT_TOL)?;
    let p_roots = roots.expanded();
    let quads = candidate_quadratics(&roots);
    let mut rng = random::rng(seed);
    for attempt in 1..=max_attempts {
        let e = random::vector(&mut rng);
        let f = random::vector(&mut rng);
        if e.dot(&f).norm() < GENERIC_TOL {
            continue;
        }
        let w = vector_wedge(&e, &f);
        let w2 = (w * w).scalar_part().re;
        if w2.abs() < GENERIC_TOL {
            continue;
        }
        let r = w2.abs().sqrt();
        let h_roots = if w2 > 0.0 {
            [Scalar::new(r, 0.0), Scalar::new(-r, 0.0)]
        } else {
            [Scalar::new(0.0, r), Scalar::new(0.0, -r)]
        };
        if min_separation(&h_roots, &p_roots) < GENERIC_TOL {
            continue;
        }
        let h = EvenPolynomial::linear(w);
        let c = &monic * &h;
        let step_seed = seed.wrapping_add(attempt as u64);
        let Ok(left) = left_factor(
            &c,
            &QuadraticFactor::new(h_roots[0], h_roots[1]),
            step_seed,
            DEFAULT_TOL,
        ) else {
            continue;
        };
        let Some(right) = quads
            .iter()
            .find_map(|q| right_factor(&c, q, step_seed, DEFAULT_TOL).ok())
        else {
            continue;
        };
        let product_factorization = full_factorization(&(p * &h), step_seed);
        return Ok(CofactorResult {
            h,
            e,
            f,
            left,
            right,
            product_factorization,
            attempts: attempt,
        });
    }
    Err(Error::ExhaustedAttempts {
        attempts: max_attempts,
    })
}

/// Multiplies P by cofactors H_k until P H_1 ... H_k factors, then
/// returns R = prod H_k H_k~ with the factorization
/// P R = [P H_1 ... H_k] (t + w_k) ... (t + w_1), where H_k = t - w_k.
pub fn real_cofactor(
    p: &EvenPolynomial,
    seed: u64,
    max_attempts: usize,
) -> Result<RealCofactorResult> {
    let (_, _) = monic_part(p)?;
    let max_steps = p.degree() + 1;
    let mut cur = p.clone();
    let mut cofactors: Vec<EvenPolynomial> = Vec::new();
    let mut step = 0;
    let base = loop {
        if let Some(f) = full_factorization(&cur, seed.wrapping_add(step as u64)) {
            break f;
        }
        if step >= max_steps {
            return Err(Error::ExhaustedAttempts {
                attempts: step * max_attempts,
            });
        }
        let found = find_cofactor(
            &cur,
            seed.wrapping_add(1000 * (step as u64 + 1)),
            max_attempts,
        )?;
        cur = &cur * &found.h;
        cofactors.push(found.h);
        step += 1;
    };
    let mut factors = base.factors;
    for h in cofactors.iter().rev() {
        // H~ = t + w for H = t - w with w a bivector
        let w = -h.coeff(0);
        factors.push(LinearFactor::new(w.reverse(), Side::Left, 1e-9)?);
    }
    let r = cofactors
        .iter()
        .try_fold(RealPolynomial::constant(1.0), |acc, h| {
            norm_poly(h, 1e-9).map(|n| &acc * &n)
        })?;
    let pr = p * &EvenPolynomial::from_real(&r);
    let mut factorization = Factorization {
        leading: base.leading,
        factors,
        side: Side::Left,
        residual: 0.0,
        ordering_id: base.ordering_id,
    };
    factorization.residual = verify(&pr, &factorization);
    if factorization.residual > VERIFY_TOL {
        return Err(Error::VerificationFailed {
            residual: factorization.residual,
        });
    }
    Ok(RealCofactorResult {
        r,
        cofactors,
        factorization,
    })
}
