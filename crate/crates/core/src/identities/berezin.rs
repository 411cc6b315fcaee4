//! Reproducing-kernel identities: determinant kernels integrated against
//! the compact truncation law reproduce `det(I - Z2*Z1)^{-N}`, and against
//! the heavy-tailed law reproduce `det(I + Z2*Z1)^{N}`.

use num_complex::Complex64;

use crate::ensembles::{sample_fermionic_matrix, sample_stiefel};
#[cfg(test)]
use crate::ensembles::sample_haar_unitary;
use crate::error::{Error, Result};
use crate::linalg::{adjoint, complex_powi, det, operator_norm, CMat};
use crate::montecarlo::{compare, estimate_mean};
#[cfg(test)]
use crate::montecarlo::Estimate;

use super::{
    result_from_subs, CheckConfig, CheckResult, SideValue, Sub, STREAM_BLOCK_A, STREAM_BLOCK_B,
};

/// Diagonal-embedded contraction `z * I` of shape rows x cols.
fn scaled_embedding(rows: usize, cols: usize, z: f64) -> CMat {
    CMat::from_fn(rows, cols, |i, j| {
        if i == j {
            Complex64::new(z, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

pub fn check_berezin(cfg: &CheckConfig) -> Result<CheckResult> {
    let (dim, n, m) = (cfg.dim as usize, cfg.rows as usize, cfg.cols as usize);
    if !(1 <= m && m <= n && n <= dim) {
        return Err(Error::RegimeViolation(format!(
            "needs 1 <= m <= n <= N, got N={dim} n={n} m={m}"
        )));
    }
    if dim < n + m {
        return Err(Error::RegimeViolation(format!(
            "compact kernel needs N >= n+m, got N={dim} n={n} m={m}"
        )));
    }
    let mut cfg = cfg.clone();
    let id_m = CMat::identity(m, m);

    let mut subs = Vec::new();

    // compact side: Z1 = Z2 = 0.5 embeddings
    let z1 = scaled_embedding(n, m, 0.5);
    let z2 = scaled_embedding(n, m, 0.5);
    cfg.record_preset("Z1_compact", &z1);
    cfg.record_preset("Z2_compact", &z2);
    if operator_norm(&z1) >= 1.0 || operator_norm(&z2) >= 1.0 {
        return Err(Error::BadParameter("kernel points must be strict contractions".into()));
    }
    let npow = dim as i64;
    let compact = estimate_mean(
        |rng| {
            let q = sample_stiefel(dim, m, rng).view((0, 0), (n, m)).into_owned();
            let d1 = complex_powi(det(&(&id_m - adjoint(&q) * &z1)), npow);
            let d2 = complex_powi(det(&(&id_m - adjoint(&z2) * &q)), npow);
            (d1 * d2).inv()
        },
        cfg.n_samples,
        cfg.seed,
        STREAM_BLOCK_A,
        8,
    )?;
    let compact_ref = complex_powi(det(&(&id_m - adjoint(&z2) * &z1)), -npow);
    subs.push(Sub::new(
        "compact kernel reproduces det(I - Z2*Z1)^{-N}",
        SideValue::from_estimate(&compact),
        SideValue::from_value(compact_ref.re),
        compare(&compact, compact_ref, cfg.z_threshold, cfg.stderr_floor),
    ));

    // heavy-tailed side: Z1 = 0.3, Z2 = 0.7 embeddings; the integrand is a
    // polynomial so every positive integer N is admissible
    let w1 = scaled_embedding(n, m, 0.3);
    let w2 = scaled_embedding(n, m, 0.7);
    cfg.record_preset("Z1_heavy", &w1);
    cfg.record_preset("Z2_heavy", &w2);
    let heavy = estimate_mean(
        |rng| {
            let q = sample_fermionic_matrix(dim, n, m, rng).expect("m <= n");
            let d1 = complex_powi(det(&(&id_m + adjoint(&q) * &w1)), npow);
            let d2 = complex_powi(det(&(&id_m + adjoint(&w2) * &q)), npow);
            d1 * d2
        },
        cfg.n_samples,
        cfg.seed,
        STREAM_BLOCK_B,
        8,
    )?;
    let heavy_ref = complex_powi(det(&(&id_m + adjoint(&w2) * &w1)), npow);
    subs.push(Sub::new(
        "heavy-tailed kernel reproduces det(I + Z2*Z1)^{N}",
        SideValue::from_estimate(&heavy),
        SideValue::from_value(heavy_ref.re),
        compare(&heavy, heavy_ref, cfg.z_threshold, cfg.stderr_floor),
    ));

    Ok(result_from_subs(&cfg, "compact N>=n+m; heavy-tailed integer N", subs, ""))
}

#[cfg(test)]
/// Zero-argument smoke path used by tests: both kernels at Z = 0 are the
/// constant 1, so the estimates are exact.
pub(crate) fn zero_point_estimates(cfg: &CheckConfig) -> Result<(Estimate, Estimate)> {
    let (dim, n, m) = (cfg.dim as usize, cfg.rows as usize, cfg.cols as usize);
    let compact = estimate_mean(
        |rng| {
            let _ = sample_haar_unitary(dim, rng);
            Complex64::new(1.0, 0.0)
        },
        cfg.n_samples.min(1000),
        cfg.seed,
        STREAM_BLOCK_A,
        1,
    )?;
    let heavy = estimate_mean(
        |rng| {
            let _ = sample_fermionic_matrix(dim, n, m, rng).expect("m <= n");
            Complex64::new(1.0, 0.0)
        },
        cfg.n_samples.min(1000),
        cfg.seed,
        STREAM_BLOCK_B,
        1,
    )?;
    Ok((compact, heavy))
}
