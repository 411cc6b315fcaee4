//! Thin helpers over dense complex matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Dense complex matrix used for all ensemble samples and identity inputs.
pub type CMat = DMatrix<Complex64>;

pub fn adjoint(m: &CMat) -> CMat {
    m.adjoint()
}

/// Eigenvalues of a Hermitian matrix, ascending. The input is symmetrized
/// first so small round-off asymmetry cannot leak into complex parts.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let mut ev: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().cloned().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

pub fn det(m: &CMat) -> Complex64 {
    m.clone().lu().determinant()
}

/// Singular values, descending.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    let gram = adjoint(m) * m;
    let mut sv: Vec<f64> = hermitian_eigenvalues(&gram)
        .into_iter()
        .map(|x| x.max(0.0).sqrt())
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Largest singular value.
pub fn operator_norm(m: &CMat) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// `max_ij |(U*U - I)_ij|`.
pub fn unitarity_residual(u: &CMat) -> f64 {
    let n = u.ncols();
    let g = adjoint(u) * u;
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let expect = if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            worst = worst.max((g[(i, j)] - expect).norm());
        }
    }
    worst
}

/// `Tr(A^k)` for `k = 1..=k_max`.
pub fn trace_powers(a: &CMat, k_max: usize) -> Vec<Complex64> {
    assert_eq!(a.nrows(), a.ncols(), "trace_powers needs a square matrix");
    let mut out = Vec::with_capacity(k_max);
    let mut pw = a.clone();
    for k in 1..=k_max {
        out.push(pw.diagonal().sum());
        if k < k_max {
            pw = &pw * a;
        }
    }
    out
}

/// Principal complex power `z^a` for real exponent.
pub fn complex_powf(z: Complex64, a: f64) -> Complex64 {
    z.powf(a)
}

/// Integer complex power, exact for negative exponents via inversion.
pub fn complex_powi(z: Complex64, k: i64) -> Complex64 {
    if k >= 0 {
        z.powu(k as u32)
    } else {
        z.powu((-k) as u32).inv()
    }
}
