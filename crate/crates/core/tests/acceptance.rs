//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Tolerances and runtime limits are pinned below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use spinor_factor::annihilator::{
    left_annihilator_cases, left_annihilator_nullspace, left_residual, NullDisplacement,
};
use spinor_factor::cofactor::{find_cofactor, DEFAULT_MAX_ATTEMPTS};
use spinor_factor::even::vector_wedge;
use spinor_factor::factor::{
    double_root_criterion, factorize_all, left_factor_algebraic, left_factor_from_annihilators,
    left_factor_geometric, verify, FactorOptions, Factorization, LinearFactor, Status,
};
use spinor_factor::fourbar::{
    self, projective_distance, quaternion_to_point, reference_points, QuadricSystem,
};
use spinor_factor::multivector::I;
use spinor_factor::random::{self, SeededRng};
use spinor_factor::roots::orderings;
use spinor_factor::{
    find_roots, norm_poly, CgaVector, Error, EvenElement, EvenPolynomial, FourQuat, Multivector,
    QuadraticFactor, Quaternion, RealPolynomial, Scalar, Side,
};

const TABLE_TOL: f64 = 1e-14;
const COFACTOR_EXAMPLE_TOL: f64 = 1e-12;
const FAMILY_TOL: f64 = 1e-10;
const ZERO_TOL: f64 = 1e-14;
const ANNIHILATOR_TOL: f64 = 1e-8;
const CASE_ANGLE_TOL: f64 = 1e-7;
const POINT_TOL: f64 = 1e-9;
const STRUCTURE_TOL: f64 = 1e-9;
const PRODUCT_TOL: f64 = 1e-9;
const DIVISION_TOL: f64 = 1e-10;
const FOURBAR_TOL: f64 = 1e-6;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
    Quaternion::new(w, x, y, z)
}

fn four(q0: Quaternion, q1: Quaternion, q2: Quaternion, q3: Quaternion) -> EvenElement {
    EvenElement::from_four_quat(&FourQuat::new(q0, q1, q2, q3))
}

fn t2_eps3() -> EvenPolynomial {
    EvenPolynomial::new(vec![
        EvenElement::eps3(),
        EvenElement::zero(),
        EvenElement::one(),
    ])
}

/// t^2 + 1 + eps1 (b t i + a j)
fn family_example(a: f64, b: f64) -> EvenPolynomial {
    let e1 = EvenElement::eps1();
    EvenPolynomial::new(vec![
        EvenElement::one() + e1 * EvenElement::quat_j().scale(a),
        e1 * EvenElement::quat_i().scale(b),
        EvenElement::one(),
    ])
}

fn criterion_1() -> Outcome {
    let (e1, e2, e3, one) = (
        EvenElement::eps1(),
        EvenElement::eps2(),
        EvenElement::eps3(),
        EvenElement::one(),
    );
    let (i, j, k) = (
        EvenElement::quat_i(),
        EvenElement::quat_j(),
        EvenElement::quat_k(),
    );
    let zero = EvenElement::zero();
    let eps_table = [
        (e1, e1, zero),
        (e1, e2, e3 - one),
        (e1, e3, e1),
        (e2, e1, -e3 - one),
        (e2, e2, zero),
        (e2, e3, -e2),
        (e3, e1, -e1),
        (e3, e2, e2),
        (e3, e3, one),
        (i, i, -one),
        (i, j, k),
        (i, k, -j),
        (j, i, -k),
        (j, j, -one),
        (j, k, i),
        (k, i, j),
        (k, j, -i),
        (k, k, -one),
    ];
    let mut worst: f64 = 0.0;
    for (a, b, c) in &eps_table {
        worst = worst.max((a.to_multivector() * b.to_multivector() - c.to_multivector()).norm());
    }
    let (eo, e123, einf) = (
        Multivector::e_o(),
        Multivector::e123(),
        Multivector::e_inf(),
    );
    let e0123inf = eo * e123 * einf;
    let z = Multivector::zero();
    let (m1, m2, m3) = (
        e1.to_multivector(),
        e2.to_multivector(),
        e3.to_multivector(),
    );
    let point_table = [
        (eo, m1, e0123inf),
        (eo, m2, z),
        (eo, m3, -eo),
        (e123, m1, -einf),
        (e123, m2, -eo),
        (e123, m3, e0123inf - e123),
        (einf, m1, z),
        (einf, m2, e123 * 2.0 - e0123inf),
        (einf, m3, einf),
    ];
    for (a, b, c) in &point_table {
        worst = worst.max((*a * *b - *c).norm());
    }
    ensure(worst <= TABLE_TOL, || {
        format!("largest deviation {worst:e}")
    })?;
    Ok(format!(
        "{} + {} entries, max deviation {worst:.1e}",
        eps_table.len(),
        point_table.len()
    ))
}

fn criterion_2() -> Outcome {
    let p = t2_eps3();
    let norm = norm_poly(&p, 1e-12).map_err(|e| e.to_string())?;
    let expected = RealPolynomial::new(vec![-1.0, 0.0, 0.0, 0.0, 1.0]);
    ensure(norm.relative_distance(&expected) <= ZERO_TOL, || {
        format!("norm {norm:?}")
    })?;
    for (z, rem_expected) in [
        (I, EvenElement::eps3() - EvenElement::one()),
        (
            Scalar::new(1.0, 0.0),
            EvenElement::eps3() + EvenElement::one(),
        ),
    ] {
        let m = QuadraticFactor::new(z, -z).poly();
        let (_, rem) = p
            .divide_right(&EvenPolynomial::from_real(&m))
            .map_err(|e| e.to_string())?;
        ensure(
            rem.degree() == 0 && (rem.coeff(0) - rem_expected).norm() <= ZERO_TOL,
            || format!("remainder for root {z} is {rem:?}"),
        )?;
    }
    let all = FactorOptions {
        all_orderings: true,
        ..FactorOptions::default()
    };
    let report = factorize_all(&p, &all).map_err(|e| e.to_string())?;
    ensure(
        report.status == Status::NoFactorization && report.diagnostics.len() == 2,
        || {
            format!(
                "t^2+eps3 status {:?} over {} orderings",
                report.status,
                report.diagnostics.len()
            )
        },
    )?;

    let e = CgaVector::e1() + CgaVector::e_o();
    let f = CgaVector::e2() + CgaVector::e_inf();
    let h = EvenPolynomial::linear(vector_wedge(&e, &f));
    let c = &p * &h;
    let report = factorize_all(&c, &FactorOptions::default()).map_err(|e| e.to_string())?;
    ensure(report.status == Status::Factored, || {
        format!("product status {:?}", report.status)
    })?;
    let found = report.factorizations[0].residual;
    let hs = [
        four(
            q(0., 0., 0., -1.),
            q(0., -1., 0., 0.),
            q(0., 0., 1., 0.),
            q(-1., 0., 0., 0.),
        ),
        four(
            q(0., 0., 0., 1.),
            q(0., 1., 0.5, 0.),
            q(0., 0., -1., 0.),
            q(1., 0., 0., 0.),
        ),
        four(
            q(0., 0., 0., -1.),
            q(0., 1., -0.5, 0.),
            q(0., 0., -1., 0.),
            q(-1., 0., 0., 0.),
        ),
    ];
    let reference = Factorization {
        leading: EvenElement::one(),
        factors: hs
            .iter()
            .map(|h| LinearFactor::new(*h, Side::Left, 1e-12))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?,
        side: Side::Left,
        residual: 0.0,
        ordering_id: 0,
    };
    let r = verify(&c, &reference);
    ensure(r <= COFACTOR_EXAMPLE_TOL, || {
        format!("reference factors residual {r:e}")
    })?;
    Ok(format!(
        "computed residual {found:.1e}, reference h1 h2 h3 residual {r:.1e}"
    ))
}

fn criterion_3() -> Outcome {
    let c = family_example(1.0, 1.0);
    let a1 = CgaVector::new(0.0, I, 1.0, 0.0, 0.0);
    let a2 = CgaVector::new(0.0, -I, 1.0, 0.0, 0.0);
    let h1 = left_factor_from_annihilators(I, -I, &a1, &a2).map_err(|e| e.to_string())?;
    ensure((h1 + EvenElement::quat_k()).norm() <= ZERO_TOL, || {
        format!("h1 = {h1:?}")
    })?;
    let f1 = LinearFactor::new(h1, Side::Left, 1e-12).map_err(|e| e.to_string())?;
    let (quot, rem) = c.divide_right(&f1.poly()).map_err(|e| e.to_string())?;
    ensure(rem.max_norm() <= FAMILY_TOL && quot.degree() == 1, || {
        "t + k is not a left factor".into()
    })?;
    let f2 = LinearFactor::new(-quot.coeff(0), Side::Left, 1e-12).map_err(|e| e.to_string())?;
    let fact = Factorization {
        leading: EvenElement::one(),
        factors: vec![f1, f2],
        side: Side::Left,
        residual: 0.0,
        ordering_id: 0,
    };
    let residual = verify(&c, &fact);
    ensure(residual <= FAMILY_TOL, || {
        format!("factorization residual {residual:e}")
    })?;

    // the reference two-parameter family for conjugate (mu, lambda)
    let mut rng = random::rng(31);
    let mut family_worst: f64 = 0.0;
    for _ in 0..5 {
        let mu = Scalar::new(random::uniform(&mut rng), random::uniform(&mut rng));
        let la = Scalar::new(random::uniform(&mut rng), random::uniform(&mut rng));
        let (mu1, mu2, la1, la2) = (mu, mu.conj(), la, la.conj());
        let b1 = CgaVector::new(0.0, I * mu1, mu1, 0.0, la1);
        let b2 = CgaVector::new(0.0, -I * mu2, mu2, 0.0, la2);
        let h = left_factor_from_annihilators(I, -I, &b1, &b2).map_err(|e| e.to_string())?;
        let s = la1 * mu2 + la2 * mu1;
        let d = (la1 * mu2 - la2 * mu1) * I;
        let formula = (EvenElement::quat_k().scale(-2.0 * mu1 * mu2)
            + EvenElement::eps1()
                * (EvenElement::quat_i().scale(s) + EvenElement::quat_j().scale(d)))
        .scale(1.0 / (2.0 * mu1 * mu2));
        family_worst = family_worst.max((h - formula).norm());
        let fh = LinearFactor::new(h, Side::Left, 1e-9).map_err(|e| e.to_string())?;
        family_worst = family_worst.max(
            c.divide_right(&fh.poly())
                .map_err(|e| e.to_string())?
                .1
                .max_norm(),
        );
    }
    ensure(family_worst <= FAMILY_TOL, || {
        format!("family deviation {family_worst:e}")
    })?;

    let c21 = family_example(2.0, 1.0);
    let geo = left_factor_geometric(&c21, I, -I, 1e-10).map(|g| g.factor);
    ensure(geo == Err(Error::OrthogonalAnnihilators), || {
        format!("geometric a=2: {geo:?}")
    })?;
    let alg = left_factor_algebraic(&c21, &QuadraticFactor::new(I, -I), 0, 2, 1e-10);
    ensure(alg == Err(Error::NoCommonZero), || {
        format!("algebraic a=2: {alg:?}")
    })?;
    Ok(format!(
        "h1 = -k, residual {residual:.1e}, family deviation {family_worst:.1e}; a=2: orthogonal / no common zero"
    ))
}

fn criterion_4() -> Outcome {
    let mut worst: f64 = 0.0;
    for (a, b) in [(2.0, 1.0), (1.0, 1.0)] {
        let c = family_example(a, b);
        let (n1, n2) = (c.eval(I), c.eval(-I));
        ensure(n1.norm() > 0.1 && n2.norm() > 0.1, || {
            "evaluations vanish".into()
        })?;
        worst = worst.max((n1.reverse() * n2).norm());
    }
    ensure(worst <= ZERO_TOL, || format!("|rev(n1) n2| = {worst:e}"))?;
    Ok(format!("|rev(n1) n2| = {worst:.1e} for a=2,b=1 and a=b=1"))
}

/// Random spinor polynomials and their evaluations at simple norm roots.
struct NullSample {
    poly: EvenPolynomial,
    n: EvenElement,
}

fn null_samples(count: usize) -> Vec<NullSample> {
    let mut rng = random::rng(2024);
    let mut out = Vec::new();
    let mut degree = 2;
    while out.len() < count {
        let poly = random::spinor_polynomial(&mut rng, degree);
        degree = 5 - degree;
        let Ok(norm) = norm_poly(&poly, 1e-9) else {
            continue;
        };
        let Ok(roots) = find_roots(&norm, 1e-10) else {
            continue;
        };
        for r in roots.roots.iter().filter(|r| r.multiplicity == 1) {
            if out.len() < count {
                out.push(NullSample {
                    poly: poly.clone(),
                    n: poly.eval(r.z),
                });
            }
        }
    }
    out
}

fn sin_angle(a: &CgaVector, b: &CgaVector) -> f64 {
    let (x, y) = (a.to_array(), b.to_array());
    let inner: Scalar = x.iter().zip(&y).map(|(p, q)| p.conj() * q).sum();
    let len = |v: &[Scalar; 5]| v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let c = inner.norm() / (len(&x) * len(&y));
    (1.0 - c * c).max(0.0).sqrt()
}

fn criterion_5() -> Outcome {
    let samples = null_samples(500);
    let (mut worst_res, mut worst_angle, mut worst_point): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut generic = 0;
    for (idx, s) in samples.iter().enumerate() {
        let nd = NullDisplacement::new(s.n, 1e-7).map_err(|e| format!("sample {idx}: {e}"))?;
        let space =
            left_annihilator_nullspace(&nd, 1e-8).map_err(|e| format!("sample {idx}: {e}"))?;
        for x in &space.basis {
            worst_res = worst_res.max(left_residual(x, &s.n) / (x.norm() * s.n.norm()));
            worst_point = worst_point.max(x.dot(x).norm() / x.norm().powi(2));
        }
        if space.generic {
            generic += 1;
            let sol = left_annihilator_cases(&nd, idx as u64)
                .map_err(|e| format!("sample {idx}: {e}"))?;
            worst_angle = worst_angle.max(sin_angle(&sol.x, &space.basis[0]));
        }
    }
    ensure(worst_res <= ANNIHILATOR_TOL, || {
        format!("residual {worst_res:e}")
    })?;
    ensure(worst_angle <= CASE_ANGLE_TOL, || {
        format!("case cascade angle {worst_angle:e}")
    })?;
    ensure(worst_point <= POINT_TOL, || {
        format!("non-null annihilator {worst_point:e}")
    })?;
    Ok(format!(
        "{} samples ({generic} generic): residual {worst_res:.1e}, angle {worst_angle:.1e}, |x.x| {worst_point:.1e}",
        samples.len()
    ))
}

fn criterion_6() -> Outcome {
    let mut polys: Vec<EvenPolynomial> = vec![family_example(1.0, 1.0)];
    let mut seen = 0;
    for s in null_samples(500) {
        if polys.last().is_some_and(|p| *p == s.poly) {
            continue;
        }
        polys.push(s.poly);
        seen += 1;
    }
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for p in &polys {
        let norm = norm_poly(p, 1e-9).map_err(|e| e.to_string())?;
        let roots = find_roots(&norm, 1e-10).map_err(|e| e.to_string())?;
        for quad in orderings(&roots, 1)[0].iter().take(1) {
            let g = left_factor_geometric(p, quad.z1, quad.z2, 1e-10).map_err(|e| e.to_string())?;
            let raw = left_factor_from_annihilators(quad.z1, quad.z2, &g.a1, &g.a2)
                .map_err(|e| e.to_string())?;
            let h = g.factor.h;
            let one = EvenElement::one();
            let scale = 1.0 + h.norm();
            worst = worst
                .max(((h - one.scale(g.z1)) * g.n2).norm() / (scale * g.n2.norm()))
                .max(((h - one.scale(g.z2)) * g.n1).norm() / (scale * g.n1.norm()))
                .max(g.factor.m.relative_distance(&quad.poly()))
                .max(raw.imag_residue() / scale);
            checked += 1;
        }
    }
    ensure(worst <= STRUCTURE_TOL, || {
        format!("largest structural deviation {worst:e}")
    })?;
    Ok(format!("{checked} geometric factors ({seen} random polynomials + the family example), max deviation {worst:.1e}"))
}

fn point_plane_product(rng: &mut SeededRng) -> EvenPolynomial {
    let h1 = random::point_plane_element(rng);
    let h2 = random::point_plane_element(rng);
    &EvenPolynomial::linear(h1) * &EvenPolynomial::linear(h2)
}

fn criterion_7() -> Outcome {
    let mut rng = random::rng(77);
    let quartic = RealPolynomial::new(vec![0.0, 0.0, 0.0, 0.0, 1.0]);
    let mut factored = 0;
    let mut min_crit = f64::INFINITY;
    for _ in 0..20 {
        let c = point_plane_product(&mut rng);
        let norm = norm_poly(&c, 1e-10).map_err(|e| e.to_string())?;
        ensure(norm.relative_distance(&quartic) <= 1e-10, || {
            format!("norm {norm:?}")
        })?;
        min_crit = min_crit.min(double_root_criterion(&c, 0.0));
        let r = factorize_all(&c, &FactorOptions::default()).map_err(|e| e.to_string())?;
        if r.status == Status::Factored && verify(&c, &r.factorizations[0]) <= PRODUCT_TOL {
            factored += 1;
        }
    }
    let mut refused = 0;
    for _ in 0..20 {
        let h = random::point_plane_element(&mut rng);
        let c = EvenPolynomial::new(vec![h, EvenElement::zero(), EvenElement::one()]);
        let crit = double_root_criterion(&c, 0.0);
        let r = factorize_all(&c, &FactorOptions::default()).map_err(|e| e.to_string())?;
        if crit == 0.0 && r.status == Status::NoFactorization {
            refused += 1;
        }
    }
    ensure(factored == 20 && refused == 20, || {
        format!("factored {factored}/20, refused {refused}/20")
    })?;
    Ok(format!(
        "factored 20/20 (min criterion {min_crit:.2e}), refused 20/20"
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = random::rng(88);
    let mut ok = 0;
    let mut worst: f64 = 0.0;
    let mut max_attempts = 0;
    let total = 100;
    for i in 0..total {
        let p = random::spinor_polynomial(&mut rng, 2);
        let Ok(r) = find_cofactor(&p, i as u64, DEFAULT_MAX_ATTEMPTS) else {
            continue;
        };
        let Some(f) = &r.product_factorization else {
            continue;
        };
        let res = verify(&(&p * &r.h), f);
        worst = worst.max(res);
        max_attempts = max_attempts.max(r.attempts);
        if res <= PRODUCT_TOL {
            ok += 1;
        }
    }
    // instances without linear factors: conjugates of (t - s)^2 + eps3
    let mut hard_ok = 0;
    let hard_total = 20;
    for i in 0..hard_total {
        let g = random::versor(&mut rng);
        let gi = g.try_inverse(1e-12).ok_or("versor not invertible")?;
        let s = random::uniform(&mut rng);
        let base = t2_eps3().shift(Scalar::new(-s, 0.0));
        let p = EvenPolynomial::new(base.coeffs.iter().map(|c| g * *c * gi).collect());
        let Ok(r) = find_cofactor(&p, 1000 + i as u64, DEFAULT_MAX_ATTEMPTS) else {
            continue;
        };
        let Some(f) = &r.product_factorization else {
            continue;
        };
        let res = verify(&(&p * &r.h), f);
        worst = worst.max(res);
        max_attempts = max_attempts.max(r.attempts);
        if res <= PRODUCT_TOL {
            hard_ok += 1;
        }
    }
    ensure(ok == total && hard_ok == hard_total, || {
        format!("random {ok}/{total}, without linear factors {hard_ok}/{hard_total}, worst residual {worst:e}")
    })?;
    Ok(format!(
        "random {ok}/{total}, without linear factors {hard_ok}/{hard_total}; max attempts {max_attempts}, worst residual {worst:.1e}"
    ))
}

fn random_poly(rng: &mut SeededRng, degree: usize) -> EvenPolynomial {
    EvenPolynomial::new((0..=degree).map(|_| random::even_element(rng)).collect())
}

fn criterion_9() -> Outcome {
    let mut rng = random::rng(99);
    let mut worst_div: f64 = 0.0;
    let mut worst_eval: f64 = 0.0;
    for k in 0..200 {
        let c = random_poly(&mut rng, 2 + k % 4);
        let p = random_poly(&mut rng, 1 + k % 3);
        ensure(p.leading().try_inverse(1e-9).is_some(), || {
            "random leading coefficient not invertible".into()
        })?;
        let (qt, r) = c.divide_left(&p).map_err(|e| e.to_string())?;
        ensure(r.is_zero() || r.degree() < p.degree(), || {
            format!("deg R = {}", r.degree())
        })?;
        worst_div = worst_div.max((&(&qt * &p) + &r).relative_distance(&c));

        // constructed zeros: a real quadratic with left zero h, and t - h
        let h = random::linear_spinor_element(&mut rng);
        let lin = EvenPolynomial::linear(h);
        let m = EvenPolynomial::from_real(&norm_poly(&lin, 1e-12).map_err(|e| e.to_string())?);
        let (_, rm) = c.divide_left(&m).map_err(|e| e.to_string())?;
        let (_, rl) = c.divide_right(&lin).map_err(|e| e.to_string())?;
        let scale = c.left_evaluate(&h).norm().max(1.0);
        worst_eval = worst_eval
            .max((c.left_evaluate(&h) - rm.left_evaluate(&h)).norm() / scale)
            .max((c.left_evaluate(&h) - rl.left_evaluate(&h)).norm() / scale);
    }
    ensure(worst_div <= DIVISION_TOL, || {
        format!("division residual {worst_div:e}")
    })?;
    ensure(worst_eval <= DIVISION_TOL, || {
        format!("evaluation identity {worst_eval:e}")
    })?;
    Ok(format!(
        "200 pairs: C = QP + R to {worst_div:.1e}, C(h) = R(h) to {worst_eval:.1e}"
    ))
}

fn criterion_10() -> Outcome {
    let report = fourbar::run(&QuadricSystem::reference(), 0, fourbar::DEFAULT_TOL)
        .map_err(|e| e.to_string())?;
    ensure(report.solutions.len() == 8, || {
        format!("{} points", report.solutions.len())
    })?;
    let reference = reference_points();
    // solver index of each reference point (n1..n4, then conjugates)
    let mut index = Vec::new();
    let mut worst_point: f64 = 0.0;
    for p in &reference {
        let (best, d) = report
            .solutions
            .iter()
            .enumerate()
            .map(|(i, s)| {
                (
                    i,
                    projective_distance(&quaternion_to_point(&s.n), &quaternion_to_point(p)),
                )
            })
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        worst_point = worst_point.max(d);
        index.push(best);
    }
    ensure(worst_point <= FOURBAR_TOL, || {
        format!("point distance {worst_point:e}")
    })?;

    // reference ruling pairs: (n1, conj n2), (n2, conj n1), (n3, conj n4), (n4, conj n3)
    // and (n1, n2), (conj n1, conj n2), (n3, n4), (conj n3, conj n4)
    let reference_pairs = [
        (0, 5),
        (1, 4),
        (2, 7),
        (3, 6),
        (0, 1),
        (4, 5),
        (2, 3),
        (6, 7),
    ];
    let norm_pair = |(a, b): (usize, usize)| (a.min(b), a.max(b));
    let mut expected: Vec<(usize, usize)> = reference_pairs
        .iter()
        .map(|&(a, b)| norm_pair((index[a], index[b])))
        .collect();
    let mut found: Vec<(usize, usize)> = report
        .rulings
        .first
        .iter()
        .chain(&report.rulings.second)
        .map(|&p| norm_pair(p))
        .collect();
    expected.sort();
    found.sort();
    ensure(expected == found, || {
        format!("ruling pairs {found:?}, expected {expected:?}")
    })?;

    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    let close = |axes: &[[f64; 3]], b: [f64; 3]| {
        axes.iter().any(|a| {
            let d = |s: f64| {
                a.iter()
                    .zip(&b)
                    .map(|(x, y)| (x - s * y).abs())
                    .fold(0.0, f64::max)
            };
            d(1.0).min(d(-1.0)) <= FOURBAR_TOL
        })
    };
    let ax = &report.axes;
    ensure(
        ax.fixed.len() == 2
            && ax.moving.len() == 2
            && close(&ax.fixed, [0.0, s2, s2])
            && close(&ax.fixed, [0.0, 0.0, 1.0])
            && close(&ax.moving, [0.6, 0.8, 0.0])
            && close(&ax.moving, [1.0, 0.0, 0.0]),
        || format!("axes {ax:?}"),
    )?;
    Ok(format!(
        "8 points within {worst_point:.1e}, 8 ruling pairs, axes f1 f2 m1 m2 matched"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("algebra conformance", criterion_1, Duration::from_secs(1)),
        (
            "cofactor example reproduction",
            criterion_2,
            Duration::from_secs(1),
        ),
        (
            "two-parameter family example",
            criterion_3,
            Duration::from_secs(1),
        ),
        (
            "null points with vanishing product",
            criterion_4,
            Duration::from_secs(1),
        ),
        (
            "annihilator property suite",
            criterion_5,
            Duration::from_secs(10),
        ),
        (
            "geometric factor structure",
            criterion_6,
            Duration::from_secs(10),
        ),
        ("double root suite", criterion_7, Duration::from_secs(5)),
        (
            "cofactor statistical suite",
            criterion_8,
            Duration::from_secs(30),
        ),
        ("division contract", criterion_9, Duration::from_secs(10)),
        (
            "four-bar reproduction",
            criterion_10,
            Duration::from_secs(10),
        ),
    ];
    let mut failures = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *limit => {
                Err(format!("{detail}; runtime {elapsed:.2?} exceeds {limit:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", k + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail} [{elapsed:.2?}]", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
