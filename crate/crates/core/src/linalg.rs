//! Small dense kernels and least-squares solves on top of nalgebra's SVD.

use nalgebra::{DMatrix, DVector};

use crate::multivector::{Scalar, ZERO};

/// Orthonormal kernel basis of `m`, taking singular values at or below
/// `rel_tol * sigma_max` as zero. Also returns all singular values.
pub fn kernel(m: &DMatrix<Scalar>, rel_tol: f64) -> (Vec<DVector<Scalar>>, Vec<f64>) {
    let cols = m.ncols();
    let padded = if m.nrows() < cols {
        let mut p = DMatrix::from_element(cols, cols, ZERO);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("v requested");
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let basis = sv
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= rel_tol * smax || smax == 0.0)
        .map(|(i, _)| v_t.row(i).transpose().map(|c| c.conj()))
        .collect();
    (basis, sv)
}

/// Kernel of a real matrix; see [`kernel`].
pub fn real_kernel(m: &DMatrix<f64>, rel_tol: f64) -> (Vec<DVector<f64>>, Vec<f64>) {
    let cols = m.ncols();
    let padded = if m.nrows() < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("v requested");
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let basis = sv
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= rel_tol * smax || smax == 0.0)
        .map(|(i, _)| v_t.row(i).transpose())
        .collect();
    (basis, sv)
}

/// Minimum-norm least-squares solution of `a x = b`.
pub fn real_lstsq(a: &DMatrix<f64>, b: &DVector<f64>, rel_tol: f64) -> DVector<f64> {
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    svd.solve(b, rel_tol * smax)
        .unwrap_or_else(|_| DVector::zeros(a.ncols()))
}

/// Numerical rank at relative threshold `rel_tol`.
pub fn real_rank(a: &DMatrix<f64>, rel_tol: f64) -> usize {
    let sv = a.singular_values();
    let smax = sv.iter().copied().fold(0.0, f64::max);
    sv.iter()
        .filter(|&&s| s > rel_tol * smax && s > 0.0)
        .count()
}
