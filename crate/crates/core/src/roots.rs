//! Complex roots of real polynomials and the real quadratic factors built
//! from them.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multivector::{Scalar, ZERO};
use crate::poly::RealPolynomial;

pub const DEFAULT_MAX_ITER: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub z: Scalar,
    pub multiplicity: usize,
}

/// Roots with multiplicities, sorted lexicographically by (re, im).
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct RootSet {
    pub roots: Vec<Root>,
}

impl RootSet {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Roots repeated according to multiplicity.
    pub fn expanded(&self) -> Vec<Scalar> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.z, r.multiplicity))
            .collect()
    }
}

/// Monic polynomial with the given complex roots.
pub fn from_roots(roots: &[Scalar]) -> Vec<Scalar> {
    let mut c = vec![Scalar::new(1.0, 0.0)];
    for &z in roots {
        let mut next = vec![ZERO; c.len() + 1];
        for (i, &a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * z;
        }
        c = next;
    }
    c
}

fn horner(c: &[Scalar], z: Scalar) -> (Scalar, Scalar) {
    let mut p = ZERO;
    let mut dp = ZERO;
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Aberth-Ehrlich iteration on a monic polynomial (`c` ascending, last = 1).
fn aberth(c: &[Scalar], max_iter: usize) -> (Vec<Scalar>, bool) {
    let n = c.len() - 1;
    let center = -c[n - 1] / n as f64;
    let radius = c[0].norm().powf(1.0 / n as f64).max(1e-3);
    // fixed seed circle, rotated off the real axis to avoid symmetric stalls
    let mut z: Vec<Scalar> = (0..n)
        .map(|k| center + Scalar::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect();
    // a root is frozen once its correction is at roundoff level or has
    // stopped shrinking, which happens for clustered roots
    let mut frozen = vec![false; n];
    let mut prev = vec![f64::INFINITY; n];
    for _ in 0..max_iter {
        for k in 0..n {
            if frozen[k] {
                continue;
            }
            let (p, dp) = horner(c, z[k]);
            if p == ZERO {
                frozen[k] = true;
                continue;
            }
            let s: Scalar = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d == ZERO {
                        ZERO
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let den = dp - p * s;
            if den == ZERO {
                continue;
            }
            let corr = p / den;
            let size = corr.norm() / (1.0 + z[k].norm());
            z[k] -= corr;
            if size <= 1e-15 || (size <= 1e-9 && size >= 0.5 * prev[k]) {
                frozen[k] = true;
            }
            prev[k] = size;
        }
        if frozen.iter().all(|&f| f) {
            return (z, true);
        }
    }
    (z, false)
}

/// Taylor coefficients of `c` at `z`, plus the scale used to judge whether
/// each of them is numerically zero.
fn taylor_with_scale(c: &[f64], z: Scalar) -> Vec<(Scalar, f64)> {
    let n = c.len();
    let mut t: Vec<Scalar> = c.iter().map(|&x| Scalar::new(x, 0.0)).collect();
    let mut s: Vec<f64> = c.iter().map(|x| x.abs()).collect();
    let r = z.norm().max(1.0);
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let next = t[j + 1];
            t[j] += next * z;
            s[j] += s[j + 1] * r;
        }
    }
    t.into_iter().zip(s).collect()
}

/// A cluster of `m` approximate roots is accepted as one root of
/// multiplicity `m` when the first `m` Taylor coefficients at its centroid
/// vanish to working precision.
fn multiple_root_ok(c: &[f64], center: Scalar, m: usize) -> bool {
    taylor_with_scale(c, center)
        .iter()
        .take(m)
        .all(|(b, s)| b.norm() <= 1e-10 * s)
}

fn centroid(zs: &[Scalar]) -> Scalar {
    zs.iter().sum::<Scalar>() / zs.len() as f64
}

/// An m-fold root of p is a simple root of the (m-1)-th derivative, so
/// Newton's method there recovers it to full precision, while the cluster
/// centroid is only accurate to about eps^(1/m).
fn refine_multiple(c: &[f64], m: usize, start: Scalar, radius: f64) -> Option<Scalar> {
    let mut d: Vec<Scalar> = c.iter().map(|&x| Scalar::new(x, 0.0)).collect();
    for _ in 1..m {
        d = d
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| x * i as f64)
            .collect();
    }
    let mut z = start;
    for _ in 0..50 {
        let (p, dp) = horner(&d, z);
        if dp == ZERO {
            break;
        }
        let step = p / dp;
        z -= step;
        if (z - start).norm() > 10.0 * radius + 1e-12 {
            return None;
        }
        if step.norm() <= 1e-16 * z.norm().max(1.0) {
            break;
        }
    }
    Some(z)
}

/// Groups approximate roots by single linkage at `delta`, then accepts or
/// splits each group depending on the Taylor test.
fn cluster(c: &[f64], zs: Vec<Scalar>, delta: f64, out: &mut Vec<Root>) {
    let n = zs.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(l: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while l[r] != r {
            r = l[r];
        }
        l[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (zs[i] - zs[j]).norm() <= delta * zs[i].norm().max(1.0) {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<Scalar>> = Vec::new();
    let mut keys: Vec<usize> = Vec::new();
    for (i, &z) in zs.iter().enumerate() {
        let r = find(&mut label, i);
        match keys.iter().position(|&k| k == r) {
            Some(p) => groups[p].push(z),
            None => {
                keys.push(r);
                groups.push(vec![z]);
            }
        }
    }
    for g in groups {
        let m = g.len();
        let c0 = centroid(&g);
        if m == 1 {
            out.push(Root {
                z: c0,
                multiplicity: 1,
            });
            continue;
        }
        let radius = g.iter().map(|z| (z - c0).norm()).fold(0.0, f64::max);
        let refined = refine_multiple(c, m, c0, radius).filter(|&z| multiple_root_ok(c, z, m));
        if let Some(z) = refined {
            out.push(Root { z, multiplicity: m });
        } else if delta < 1e-12 {
            out.extend(g.into_iter().map(|z| Root { z, multiplicity: 1 }));
        } else {
            cluster(c, g, delta / 10.0, out);
        }
    }
}

/// All complex roots of a real polynomial, with multiplicities.
///
/// Exact zero roots are split off first. The rest is solved by
/// Aberth-Ehrlich iteration from a fixed circle; nearby approximations are
/// merged into multiple roots when the Taylor expansion at their centroid
/// supports it. Conjugate pairs are symmetrized and every root is checked
/// against `|p(z)| <= tol * ||p||_1 * max(1, |z|)^deg`.
pub fn find_roots(p: &RealPolynomial, tol: f64) -> Result<RootSet> {
    find_roots_with(p, tol, DEFAULT_MAX_ITER)
}

pub fn find_roots_with(p: &RealPolynomial, tol: f64, max_iter: usize) -> Result<RootSet> {
    let deg = p.degree();
    if p.is_zero() || deg == 0 {
        return Err(Error::InvalidInput("root finding needs degree >= 1".into()));
    }
    if p.coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::NonFinite);
    }
    let zeros = p.coeffs.iter().take_while(|&&c| c == 0.0).count();
    let rest: Vec<f64> = p.coeffs[zeros..].iter().map(|c| c / p.leading()).collect();
    let mut roots = Vec::new();
    if zeros > 0 {
        roots.push(Root {
            z: ZERO,
            multiplicity: zeros,
        });
    }
    if rest.len() > 1 {
        let monic: Vec<Scalar> = rest.iter().map(|&x| Scalar::new(x, 0.0)).collect();
        let (approx, _) = aberth(&monic, max_iter);
        cluster(&rest, approx, 1e-3, &mut roots);
    }
    let mut roots = symmetrize_conjugates(roots);
    let scale = p.l1_norm();
    for r in &roots {
        let bound = tol * scale * r.z.norm().max(1.0).powi(deg as i32);
        if p.eval_complex(r.z).norm() > bound {
            return Err(Error::NoConvergence {
                iterations: max_iter,
            });
        }
    }
    roots.sort_by(|a, b| a.z.re.total_cmp(&b.z.re).then(a.z.im.total_cmp(&b.z.im)));
    Ok(RootSet { roots })
}

fn symmetrize_conjugates(roots: Vec<Root>) -> Vec<Root> {
    let mut out = Vec::with_capacity(roots.len());
    let mut used = vec![false; roots.len()];
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let r = roots[i];
        if r.z.im.abs() <= 1e-9 * r.z.norm().max(1.0) {
            out.push(Root {
                z: Scalar::new(r.z.re, 0.0),
                multiplicity: r.multiplicity,
            });
            continue;
        }
        let partner = (0..roots.len())
            .filter(|&j| !used[j] && roots[j].multiplicity == r.multiplicity)
            .min_by(|&a, &b| {
                let da = (roots[a].z - r.z.conj()).norm();
                let db = (roots[b].z - r.z.conj()).norm();
                da.total_cmp(&db)
            });
        match partner {
            Some(j) => {
                used[j] = true;
                let z = (r.z + roots[j].z.conj()) * 0.5;
                out.push(Root {
                    z,
                    multiplicity: r.multiplicity,
                });
                out.push(Root {
                    z: z.conj(),
                    multiplicity: r.multiplicity,
                });
            }
            None => out.push(r),
        }
    }
    out
}

/// Monic real quadratic (t - z1)(t - z2) together with its roots.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadraticFactor {
    pub z1: Scalar,
    pub z2: Scalar,
}

impl QuadraticFactor {
    pub fn new(z1: Scalar, z2: Scalar) -> Self {
        Self { z1, z2 }
    }

    pub fn poly(&self) -> RealPolynomial {
        RealPolynomial::quadratic(self.z1, self.z2)
    }

    pub fn is_double(&self) -> bool {
        self.z1 == self.z2
    }

    pub fn is_conjugate_pair(&self) -> bool {
        self.z1.im != 0.0
    }
}

fn lex(a: &Scalar, b: &Scalar) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Distinct quadratic factors of the norm, each with the number of times it
/// can occur in one factorization.
pub fn quadratic_factors(norm: &RealPolynomial, tol: f64) -> Result<Vec<(QuadraticFactor, usize)>> {
    if norm.degree() % 2 == 1 {
        return Err(Error::OddDegree(norm.degree()));
    }
    let roots = find_roots(norm, tol)?;
    let mut out: Vec<(QuadraticFactor, usize)> = Vec::new();
    for q in pairings(&roots).into_iter().flatten() {
        let count = pairings(&roots)
            .iter()
            .map(|p| p.iter().filter(|x| **x == q).count())
            .max()
            .unwrap_or(0);
        if !out.iter().any(|(x, _)| *x == q) {
            out.push((q, count));
        }
    }
    Ok(out)
}

/// All ways to split the root multiset into real quadratics. Conjugate
/// pairs stay together; real roots pair with any other real root, or with
/// themselves when repeated. Each pairing is sorted and the list is
/// deduplicated.
pub fn pairings(roots: &RootSet) -> Vec<Vec<QuadraticFactor>> {
    let mut complex = Vec::new();
    let mut real = Vec::new();
    for r in &roots.roots {
        if r.z.im > 0.0 {
            for _ in 0..r.multiplicity {
                complex.push(QuadraticFactor::new(r.z, r.z.conj()));
            }
        } else if r.z.im == 0.0 {
            for _ in 0..r.multiplicity {
                real.push(r.z);
            }
        }
    }
    real.sort_by(lex);
    let mut out = Vec::new();
    match_reals(&real, &mut Vec::new(), &mut out);
    let mut result: Vec<Vec<QuadraticFactor>> = Vec::new();
    for m in out {
        let mut all = complex.clone();
        all.extend(m);
        all.sort_by(cmp_quad);
        if !result.contains(&all) {
            result.push(all);
        }
    }
    result
}

fn cmp_quad(a: &QuadraticFactor, b: &QuadraticFactor) -> std::cmp::Ordering {
    lex(&a.z1, &b.z1).then(lex(&a.z2, &b.z2))
}

fn match_reals(
    rest: &[Scalar],
    cur: &mut Vec<QuadraticFactor>,
    out: &mut Vec<Vec<QuadraticFactor>>,
) {
    if rest.is_empty() {
        out.push(cur.clone());
        return;
    }
    let first = rest[0];
    let mut tried: Vec<Scalar> = Vec::new();
    for j in 1..rest.len() {
        if tried.contains(&rest[j]) {
            continue;
        }
        tried.push(rest[j]);
        let mut remaining: Vec<Scalar> = rest[1..].to_vec();
        remaining.remove(j - 1);
        cur.push(QuadraticFactor::new(first, rest[j]));
        match_reals(&remaining, cur, out);
        cur.pop();
    }
}

/// Ordered sequences of quadratic factors whose product is the norm, in
/// canonical order: pairings in lexicographic order, then distinct
/// permutations of each pairing in lexicographic order. The position in the
/// returned list is the ordering id.
pub fn orderings(roots: &RootSet, limit: usize) -> Vec<Vec<QuadraticFactor>> {
    let mut out = Vec::new();
    for p in pairings(roots) {
        let mut perm = p.clone();
        loop {
            out.push(perm.clone());
            if out.len() >= limit || !next_permutation(&mut perm) {
                break;
            }
        }
        if out.len() >= limit {
            break;
        }
    }
    out
}

fn next_permutation(v: &mut [QuadraticFactor]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && cmp_quad(&v[i - 1], &v[i]).is_ge() {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while cmp_quad(&v[j], &v[i - 1]).is_le() {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[f64]) -> RealPolynomial {
        RealPolynomial::new(c.to_vec())
    }

    #[test]
    fn linear_root() {
        let r = find_roots(&poly(&[-5.0, 1.0]), 1e-12).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert!((r.roots[0].z - Scalar::new(5.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn double_conjugate_pair() {
        let r = find_roots(&poly(&[1.0, 0.0, 2.0, 0.0, 1.0]), 1e-10).unwrap();
        assert_eq!(r.roots.len(), 2);
        for root in &r.roots {
            assert_eq!(root.multiplicity, 2);
            assert!((root.z.norm() - 1.0).abs() < 1e-7);
            assert!(root.z.re.abs() < 1e-7);
        }
        assert_eq!(r.roots[0].z, r.roots[1].z.conj());
    }

    #[test]
    fn cofactor_example_norm_roots() {
        let r = find_roots(&poly(&[-1.0, 0.0, 0.0, 0.0, 1.0]), 1e-12).unwrap();
        let zs: Vec<Scalar> = r.roots.iter().map(|x| x.z).collect();
        let expect = [
            Scalar::new(-1.0, 0.0),
            Scalar::new(0.0, -1.0),
            Scalar::new(0.0, 1.0),
            Scalar::new(1.0, 0.0),
        ];
        for (a, b) in zs.iter().zip(expect.iter()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn quadruple_root_with_noise() {
        let r = find_roots(&poly(&[1e-17, -3e-17, 2e-17, 0.0, 1.0]), 1e-10).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert_eq!(r.roots[0].multiplicity, 4);
        assert!(r.roots[0].z.norm() < 1e-12);
    }

    #[test]
    fn exact_zero_roots() {
        let r = find_roots(&poly(&[0.0, 0.0, 2.0, 1.0]), 1e-12).unwrap();
        assert_eq!(r.roots[0].multiplicity, 1);
        assert_eq!(
            r.roots.iter().find(|x| x.z == ZERO).unwrap().multiplicity,
            2
        );
    }

    #[test]
    fn quadratic_factor_enumeration() {
        let q = quadratic_factors(&poly(&[-1.0, 0.0, 0.0, 0.0, 1.0]), 1e-12).unwrap();
        let polys: Vec<RealPolynomial> = q.iter().map(|(f, _)| f.poly()).collect();
        assert!(polys.contains(&poly(&[1.0, 0.0, 1.0])));
        assert!(polys.contains(&poly(&[-1.0, 0.0, 1.0])));
        assert_eq!(polys.len(), 2);
        let q = quadratic_factors(&poly(&[1.0, 0.0, 2.0, 0.0, 1.0]), 1e-10).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(q[0].1, 2);
        let q = quadratic_factors(&poly(&[2.0, -3.0, 1.0]), 1e-12).unwrap();
        assert_eq!(q.len(), 1);
        assert!(q[0].0.poly().relative_distance(&poly(&[2.0, -3.0, 1.0])) < 1e-14);
        assert_eq!(
            quadratic_factors(&poly(&[1.0, 1.0]), 1e-12),
            Err(Error::OddDegree(1))
        );
    }

    #[test]
    fn orderings_of_four_real_roots() {
        let r = find_roots(&poly(&[24.0, -50.0, 35.0, -10.0, 1.0]), 1e-12).unwrap();
        // three pairings of {1,2,3,4}, each in two orders
        assert_eq!(orderings(&r, 100).len(), 6);
        assert_eq!(orderings(&r, 4).len(), 4);
    }
}
