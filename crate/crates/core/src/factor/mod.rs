//! Factorization of spinor polynomials into monic linear factors.
//!
//! A left factor t - h of a monic spinor polynomial C is peeled for one
//! real quadratic factor M of the norm polynomial at a time. Three
//! extractors are available: the geometric construction from annihilating
//! points ([`left_factor_geometric`]), the classical division approach
//! ([`left_factor_algebraic`]) and the repeated-root construction
//! ([`left_factor_double_root`]). [`factorize_all`] drives them over every
//! ordering of quadratic factors.

mod algebraic;
mod double_root;
mod geometric;

use serde::{Deserialize, Serialize};

pub use algebraic::{left_factor_algebraic, right_factor_algebraic, AlgebraicOutcome};
pub use double_root::{double_root_criterion, left_factor_double_root, right_factor_double_root};
pub use geometric::{
    geometric_candidates, left_factor_from_annihilators, left_factor_geometric,
    right_factor_geometric, GeometricFactor,
};

use crate::annihilator::Side;
use crate::error::{Error, Result};
use crate::even::EvenElement;
use crate::multivector::Scalar;
use crate::poly::{norm_poly, EvenPolynomial, RealPolynomial};
use crate::roots::{find_roots, orderings, QuadraticFactor};

/// Default tolerance for root finding and spinor checks.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Bound on the relative re-expansion residual of a reported factorization.
pub const VERIFY_TOL: f64 = 1e-9;
/// Relative distance below which two factor sequences are the same.
pub const DEDUP_TOL: f64 = 1e-7;
/// Upper bound on explored orderings when all of them are requested.
pub const MAX_ORDERINGS: usize = 720;

/// Monic linear factor t - h with its norm M = (t - h)(t - h~).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearFactor {
    pub h: EvenElement,
    pub m: RealPolynomial,
    pub side: Side,
}

impl LinearFactor {
    /// Wraps a real h, checking that t - h is a spinor polynomial.
    pub fn new(h: EvenElement, side: Side, tol: f64) -> Result<Self> {
        let scale = 1.0 + h.norm();
        let residue = h.imag_residue() * h.norm() / scale;
        if residue > tol {
            return Err(Error::ComplexFactor { residue });
        }
        let h = h.real_part();
        let hr = h.reverse();
        let sum = h + hr;
        let prod = h * hr;
        let s = sum.scalar_part().re;
        let p = prod.scalar_part().re;
        let residue = ((sum - EvenElement::scalar(s)).norm()
            + (prod - EvenElement::scalar(p)).norm()
            + (hr * h - prod).norm())
            / (scale * scale);
        if residue > tol {
            return Err(Error::NotSpinor { residue });
        }
        Ok(Self {
            h,
            m: RealPolynomial::new(vec![p, -s, 1.0]),
            side,
        })
    }

    /// The polynomial t - h.
    pub fn poly(&self) -> EvenPolynomial {
        EvenPolynomial::linear(self.h)
    }
}

/// C = leading * (t - h_1) ... (t - h_n) for left factorizations and
/// C = (t - h_1) ... (t - h_n) * leading for right ones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Factorization {
    pub leading: EvenElement,
    pub factors: Vec<LinearFactor>,
    pub side: Side,
    pub residual: f64,
    pub ordering_id: usize,
}

impl Factorization {
    pub fn product(&self) -> EvenPolynomial {
        let prod = self
            .factors
            .iter()
            .fold(EvenPolynomial::constant(EvenElement::one()), |acc, f| {
                &acc * &f.poly()
            });
        match self.side {
            Side::Left => prod.mul_left(&self.leading),
            Side::Right => prod.mul_right(&self.leading),
        }
    }

    fn same_as(&self, other: &Factorization) -> bool {
        self.factors.len() == other.factors.len()
            && self
                .factors
                .iter()
                .zip(&other.factors)
                .all(|(a, b)| (a.h - b.h).norm() <= DEDUP_TOL * (1.0 + a.h.norm().max(b.h.norm())))
    }
}

/// Largest coefficient deviation of the re-expanded product from C,
/// relative to the larger coefficient norm.
pub fn verify(c: &EvenPolynomial, f: &Factorization) -> f64 {
    f.product().relative_distance(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Factored,
    NoFactorization,
    InfiniteFamily,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodKind {
    Geometric,
    Algebraic,
    DoubleRoot,
    Linear,
}

/// Outcome of one extraction attempt.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepDiagnostic {
    pub degree: usize,
    pub quadratic: QuadraticFactor,
    pub method: MethodKind,
    pub result: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderingDiagnostic {
    pub ordering_id: usize,
    pub quadratics: Vec<QuadraticFactor>,
    pub steps: Vec<StepDiagnostic>,
    pub factorizations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorReport {
    pub status: Status,
    pub factorizations: Vec<Factorization>,
    pub diagnostics: Vec<OrderingDiagnostic>,
    /// Largest dimension of a solution family met while peeling.
    pub family_dimension: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FactorOptions {
    pub all_orderings: bool,
    /// Samples kept per step when a factor is not unique.
    pub max_families: usize,
    pub seed: u64,
    pub tol: f64,
    pub side: Side,
}

impl Default for FactorOptions {
    fn default() -> Self {
        Self {
            all_orderings: false,
            max_families: 2,
            seed: 0,
            tol: DEFAULT_TOL,
            side: Side::Left,
        }
    }
}

/// Checks and normalizes the input: real coefficients, invertible leading
/// coefficient, spinor property. Returns the leading coefficient, the monic
/// polynomial and its norm.
fn prepare(c: &EvenPolynomial, tol: f64) -> Result<(EvenElement, EvenPolynomial, RealPolynomial)> {
    if c.is_zero() {
        return Err(Error::ZeroElement);
    }
    if c.degree() == 0 {
        return Err(Error::InvalidInput("polynomial has degree 0".into()));
    }
    if c.imag_residue() > tol.max(1e-12) {
        return Err(Error::InvalidInput("complex coefficients".into()));
    }
    let c = c.real_part();
    let lead = c.leading();
    let inv = lead
        .try_inverse(1e-12)
        .ok_or(Error::NonInvertibleLeadingCoefficient)?;
    let monic = c.mul_left(&inv);
    let norm = norm_poly(&monic, tol.max(1e-9))?;
    Ok((lead, monic, norm))
}

struct Peeler<'a> {
    opts: &'a FactorOptions,
    steps: Vec<StepDiagnostic>,
    family: Option<usize>,
}

impl Peeler<'_> {
    fn record(
        &mut self,
        degree: usize,
        q: QuadraticFactor,
        method: MethodKind,
        err: Option<&Error>,
    ) {
        self.steps.push(StepDiagnostic {
            degree,
            quadratic: q,
            method,
            result: err.map_or_else(|| "ok".into(), Error::to_string),
        });
    }

    fn mark_family(&mut self, dim: usize) {
        self.family = Some(self.family.map_or(dim, |d| d.max(dim)));
    }

    /// Candidate left factors of the monic c for the quadratic q.
    fn extract(&mut self, c: &EvenPolynomial, q: QuadraticFactor) -> Vec<LinearFactor> {
        let tol = self.opts.tol;
        let deg = c.degree();
        if deg == 1 {
            let r = LinearFactor::new(-c.coeff(0), Side::Left, 1e-8);
            self.record(deg, q, MethodKind::Linear, r.as_ref().err());
            return r.into_iter().collect();
        }
        let mut fallback = true;
        if q.is_double() {
            let r = left_factor_double_root(c, q.z1.re, tol);
            self.record(deg, q, MethodKind::DoubleRoot, r.as_ref().err());
            match r {
                Ok(f) => return vec![f],
                Err(Error::NoFactor) => fallback = false,
                Err(_) => {}
            }
        } else {
            let r = geometric_candidates(c, q.z1, q.z2, tol);
            self.record(deg, q, MethodKind::Geometric, r.as_ref().err());
            if let Ok(cands) = r {
                let mut out: Vec<LinearFactor> = cands.into_iter().map(|g| g.factor).collect();
                if out.len() > 1 {
                    // several distinct factors: ask the algebraic method for
                    // the dimension of the family
                    let dim = match left_factor_algebraic(c, &q, self.opts.seed, 1, tol) {
                        Ok(AlgebraicOutcome::Family { dimension, .. }) => dimension.max(1),
                        _ => 1,
                    };
                    self.mark_family(dim);
                }
                out.truncate(self.opts.max_families.max(1));
                return out;
            }
        }
        if !fallback {
            return Vec::new();
        }
        let r = left_factor_algebraic(c, &q, self.opts.seed, self.opts.max_families, tol);
        self.record(deg, q, MethodKind::Algebraic, r.as_ref().err());
        match r {
            Ok(AlgebraicOutcome::Unique(f)) => vec![f],
            Ok(AlgebraicOutcome::Family { samples, dimension }) => {
                if dimension > 0 {
                    self.mark_family(dimension);
                }
                samples
            }
            Err(_) => Vec::new(),
        }
    }

    fn expand(
        &mut self,
        c: &EvenPolynomial,
        quads: &[QuadraticFactor],
        prefix: &mut Vec<LinearFactor>,
        out: &mut Vec<Vec<LinearFactor>>,
    ) {
        if c.degree() == 0 || quads.is_empty() {
            if c.degree() == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for f in self.extract(c, quads[0]) {
            let Ok((quot, rem)) = c.divide_right(&f.poly()) else {
                continue;
            };
            if rem.max_norm() > VERIFY_TOL * c.max_norm() {
                continue;
            }
            prefix.push(f);
            self.expand(&quot, &quads[1..], prefix, out);
            prefix.pop();
        }
    }
}

/// Factors C for every ordering of quadratic factors of its norm (only the
/// first ordering unless `all_orderings`). Per-ordering failures are
/// recorded in the diagnostics; only malformed input is an error.
pub fn factorize_all(c: &EvenPolynomial, opts: &FactorOptions) -> Result<FactorReport> {
    let work = match opts.side {
        Side::Left => c.clone(),
        Side::Right => c.reverse(),
    };
    let (lead, monic, norm) = prepare(&work, opts.tol)?;
    let roots = find_roots(&norm, opts.tol)?;
    let limit = if opts.all_orderings { MAX_ORDERINGS } else { 1 };
    let mut factorizations: Vec<Factorization> = Vec::new();
    let mut diagnostics = Vec::new();
    let mut family = None;
    for (id, quads) in orderings(&roots, limit).into_iter().enumerate() {
        let mut peeler = Peeler {
            opts,
            steps: Vec::new(),
            family: None,
        };
        let mut seqs = Vec::new();
        peeler.expand(&monic, &quads, &mut Vec::new(), &mut seqs);
        let mut found = 0;
        for seq in seqs {
            let f = orient(lead, seq, opts.side, id);
            let residual = verify(c, &f);
            if residual > VERIFY_TOL {
                peeler.steps.push(StepDiagnostic {
                    degree: monic.degree(),
                    quadratic: quads[0],
                    method: MethodKind::Linear,
                    result: Error::VerificationFailed { residual }.to_string(),
                });
                continue;
            }
            let f = Factorization { residual, ..f };
            found += 1;
            if !factorizations.iter().any(|g| g.same_as(&f)) {
                factorizations.push(f);
            }
        }
        if found > 0 {
            if let Some(d) = peeler.family {
                family = Some(family.map_or(d, |x: usize| x.max(d)));
            }
        }
        diagnostics.push(OrderingDiagnostic {
            ordering_id: id,
            quadratics: quads,
            steps: peeler.steps,
            factorizations: found,
        });
    }
    let status = match (factorizations.is_empty(), family) {
        (true, _) => Status::NoFactorization,
        (false, Some(_)) => Status::InfiniteFamily,
        (false, None) => Status::Factored,
    };
    Ok(FactorReport {
        status,
        factorizations,
        diagnostics,
        family_dimension: family,
    })
}

/// One left factor of the monic C for the quadratic q, using the same
/// method priority as [`factorize_all`].
pub fn left_factor(
    c: &EvenPolynomial,
    q: &QuadraticFactor,
    seed: u64,
    tol: f64,
) -> Result<LinearFactor> {
    if c.degree() == 1 {
        return LinearFactor::new(-c.coeff(0), Side::Left, 1e-8);
    }
    if q.is_double() {
        match left_factor_double_root(c, q.z1.re, tol) {
            Ok(f) => return Ok(f),
            Err(Error::NoFactor) => return Err(Error::NoFactor),
            Err(_) => {}
        }
    } else if let Ok(g) = left_factor_geometric(c, q.z1, q.z2, tol) {
        return Ok(g.factor);
    }
    match left_factor_algebraic(c, q, seed, 1, tol)? {
        AlgebraicOutcome::Unique(f) => Ok(f),
        AlgebraicOutcome::Family { mut samples, .. } => Ok(samples.swap_remove(0)),
    }
}

/// One right factor C = Q (t - h) of the monic C for the quadratic q.
pub fn right_factor(
    c: &EvenPolynomial,
    q: &QuadraticFactor,
    seed: u64,
    tol: f64,
) -> Result<LinearFactor> {
    left_factor(&c.reverse(), q, seed, tol).map(mirror)
}

/// Converts a left factor sequence of the (possibly reversed) working
/// polynomial into a factorization of the input.
fn orient(lead: EvenElement, seq: Vec<LinearFactor>, side: Side, id: usize) -> Factorization {
    match side {
        Side::Left => Factorization {
            leading: lead,
            factors: seq,
            side,
            residual: 0.0,
            ordering_id: id,
        },
        Side::Right => Factorization {
            leading: lead.reverse(),
            factors: seq
                .into_iter()
                .rev()
                .map(|f| LinearFactor {
                    h: f.h.reverse(),
                    m: f.m,
                    side: Side::Right,
                })
                .collect(),
            side,
            residual: 0.0,
            ordering_id: id,
        },
    }
}

/// Runs a left extractor on the reversed polynomial and reverses the
/// result, turning a left factor of C~ into a right factor of C.
pub(crate) fn mirror(f: LinearFactor) -> LinearFactor {
    LinearFactor {
        h: f.h.reverse(),
        m: f.m,
        side: Side::Right,
    }
}

/// Relative size of the left evaluation C(h), the test for t - h being a
/// left factor.
pub(crate) fn left_zero_residual(c: &EvenPolynomial, h: &EvenElement) -> f64 {
    let scale: f64 = c
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, q)| q.norm() * (1.0 + h.norm()).powi(i as i32))
        .sum();
    c.left_evaluate(h).norm() / scale.max(f64::MIN_POSITIVE)
}

/// Rejects quadratics whose roots are neither real nor conjugate.
pub(crate) fn check_quadratic(z1: Scalar, z2: Scalar) -> Result<()> {
    let real = z1.im == 0.0 && z2.im == 0.0;
    let conj = z1.im != 0.0 && (z1.conj() - z2).norm() <= 1e-12 * (1.0 + z1.norm());
    if real || conj {
        Ok(())
    } else {
        Err(Error::NonRealQuadratic)
    }
}
