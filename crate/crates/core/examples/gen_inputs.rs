//! Writes sample CLI inputs into the directory given as first argument
//! (default `data`).

use std::path::{Path, PathBuf};

use serde_json::json;
use spinor_factor::even::vector_wedge;
use spinor_factor::factor::{factorize_all, FactorOptions};
use spinor_factor::fourbar::{reference_points, QuadricSystem};
use spinor_factor::{random, CgaVector, EvenElement, EvenPolynomial, Quaternion};

fn write(dir: &Path, name: &str, value: serde_json::Value) {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(&value).unwrap() + "\n").unwrap();
    println!("{}", path.display());
}

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "data".into()));
    std::fs::create_dir_all(&dir).unwrap();

    let t2_eps3 = EvenPolynomial::new(vec![
        EvenElement::eps3(),
        EvenElement::zero(),
        EvenElement::one(),
    ]);
    write(&dir, "t2_eps3.json", json!(t2_eps3));

    let e = CgaVector::e1() + CgaVector::e_o();
    let f = CgaVector::e2() + CgaVector::e_inf();
    let product = &t2_eps3 * &EvenPolynomial::linear(vector_wedge(&e, &f));
    write(&dir, "cofactor_product.json", json!(product));

    let k = EvenElement::quat_k();
    let one = EvenElement::one();
    let family_example = EvenPolynomial::new(vec![
        one + EvenElement::eps1() * EvenElement::quat_j(),
        EvenElement::eps1() * EvenElement::quat_i(),
        one,
    ]);
    write(&dir, "family.json", json!(family_example));

    let cubic = random::spinor_polynomial(&mut random::rng(1), 3);
    write(&dir, "random_cubic.json", json!(cubic));
    let report = factorize_all(&cubic, &FactorOptions::default()).unwrap();
    write(
        &dir,
        "verify_cubic.json",
        json!({ "polynomial": cubic, "factorization": report.factorizations[0] }),
    );

    let n1: Quaternion = reference_points()[0];
    write(&dir, "null_quaternion.json", json!(n1.to_even()));
    write(&dir, "fourbar_points.json", json!(reference_points()));
    write(
        &dir,
        "fourbar_system.json",
        json!({ "forms": QuadricSystem::reference().forms }),
    );
    write(&dir, "not_null.json", json!(one + k));
}
