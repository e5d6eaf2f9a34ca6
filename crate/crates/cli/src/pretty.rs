//! Human-readable output. Even elements are printed in four-quaternion
//! form q0 + eps1 q1 + eps2 q2 + eps3 q3; the complex unit is written I.

use std::fmt::Write;

use spinor_factor::annihilator::NullClass;
use spinor_factor::fourbar::FourBarReport;
use spinor_factor::{
    CgaVector, CofactorResult, EvenElement, EvenPolynomial, FactorReport, Factorization,
    Quaternion, RealCofactorResult, Scalar,
};

const ZERO_TOL: f64 = 1e-12;

fn num(v: f64) -> String {
    let s = format!("{:.6}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

pub fn scalar(c: Scalar) -> String {
    let re = c.re.abs() > ZERO_TOL;
    let im = c.im.abs() > ZERO_TOL;
    match (re, im) {
        (_, false) => num(c.re),
        (false, true) => format!("{}I", num(c.im)),
        (true, true) => format!("({}{}I)", num(c.re), signed(c.im)),
    }
}

fn signed(v: f64) -> String {
    let s = num(v);
    if s.starts_with('-') {
        s
    } else {
        format!("+{s}")
    }
}

pub fn quaternion(q: &Quaternion) -> String {
    let terms: Vec<String> = [(q.w, ""), (q.x, "i"), (q.y, "j"), (q.z, "k")]
        .iter()
        .filter(|(c, _)| c.norm() > ZERO_TOL)
        .map(|(c, u)| match (scalar(*c).as_str(), *u) {
            (s, "") => s.to_string(),
            ("1", u) => u.to_string(),
            ("-1", u) => format!("-{u}"),
            (s, u) => format!("{s}{u}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

pub fn even(e: &EvenElement) -> String {
    let f = e.to_four_quat();
    let mut parts = Vec::new();
    for (k, q) in f.q.iter().enumerate() {
        if q.abs() <= ZERO_TOL {
            continue;
        }
        let body = quaternion(q);
        parts.push(match k {
            0 => body,
            _ => format!("eps{k}({body})"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn polynomial(p: &EvenPolynomial) -> String {
    let mut terms = Vec::new();
    for (i, c) in p.coeffs.iter().enumerate().rev() {
        if c.norm() <= ZERO_TOL {
            continue;
        }
        let t = match i {
            0 => String::new(),
            1 => " t".into(),
            _ => format!(" t^{i}"),
        };
        terms.push(format!("[{}]{t}", even(c)));
    }
    terms.join(" + ")
}

fn vector(v: &CgaVector) -> String {
    let names = ["e_o", "e1", "e2", "e3", "e_inf"];
    let terms: Vec<String> = v
        .to_array()
        .iter()
        .zip(names)
        .filter(|(c, _)| c.norm() > ZERO_TOL)
        .map(|(c, n)| format!("{} {n}", scalar(*c)))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

fn factorization(out: &mut String, f: &Factorization) {
    let _ = writeln!(out, "  leading: {}", even(&f.leading));
    for (k, l) in f.factors.iter().enumerate() {
        let _ = writeln!(out, "  h{} = {}", k + 1, even(&l.h));
    }
    let _ = writeln!(out, "  residual: {:.3e}", f.residual);
}

pub fn report(r: &FactorReport) -> String {
    let mut out = String::new();
    let status = serde_json::to_value(r.status)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default();
    let _ = writeln!(out, "status: {status}");
    if let Some(d) = r.family_dimension {
        let _ = writeln!(out, "family dimension: {d}");
    }
    for (k, f) in r.factorizations.iter().enumerate() {
        let _ = writeln!(
            out,
            "factorization {} (ordering {}, {:?} side):",
            k + 1,
            f.ordering_id,
            f.side
        );
        factorization(&mut out, f);
    }
    for d in &r.diagnostics {
        for s in &d.steps {
            let _ = writeln!(
                out,
                "ordering {}: degree {} {:?}: {}",
                d.ordering_id, s.degree, s.method, s.result
            );
        }
    }
    out
}

pub fn cofactor(c: &CofactorResult, r: &RealCofactorResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "H = {}", polynomial(&c.h));
    let _ = writeln!(out, "e = {}", vector(&c.e));
    let _ = writeln!(out, "f = {}", vector(&c.f));
    let _ = writeln!(out, "attempts: {}", c.attempts);
    let _ = writeln!(out, "left factor: t - [{}]", even(&c.left.h));
    let _ = writeln!(out, "right factor: t - [{}]", even(&c.right.h));
    match &c.product_factorization {
        Some(f) => {
            let _ = writeln!(out, "P H:");
            factorization(&mut out, f);
        }
        None => {
            let _ = writeln!(out, "P H: no complete factorization");
        }
    }
    let coeffs: Vec<String> = r.r.coeffs.iter().map(|c| num(*c)).collect();
    let _ = writeln!(out, "R coefficients (ascending): [{}]", coeffs.join(", "));
    let _ = writeln!(out, "P R:");
    factorization(&mut out, &r.factorization);
    out
}

pub fn annihilators(left: &[CgaVector], right: &[CgaVector], class: &NullClass) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "class: {class:?}");
    for v in left {
        let _ = writeln!(out, "left: {}", vector(v));
    }
    for v in right {
        let _ = writeln!(out, "right: {}", vector(v));
    }
    out
}

pub fn fourbar(r: &FourBarReport) -> String {
    let mut out = String::new();
    let partner = |p: Option<usize>| p.map_or("-".to_string(), |i| format!("n{i}"));
    for (k, s) in r.solutions.iter().enumerate() {
        let _ = writeln!(
            out,
            "n{k}: {}  (first ruling {}, second ruling {})",
            quaternion(&s.n),
            partner(s.ruling_partners.first),
            partner(s.ruling_partners.second)
        );
    }
    let axis = |a: &[f64; 3]| format!("({}, {}, {})", num(a[0]), num(a[1]), num(a[2]));
    for a in &r.axes.fixed {
        let _ = writeln!(out, "fixed axis: {}", axis(a));
    }
    for a in &r.axes.moving {
        let _ = writeln!(out, "moving axis: {}", axis(a));
    }
    out
}
