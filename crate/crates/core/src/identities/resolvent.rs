//! Determinant-expansion identities: inverse-determinant group averages
//! reduced to radial ensemble averages through the Kronecker eigenvalue
//! factorization, their duals with positive determinant powers over the
//! heavy-tailed law, the exact Schur-series routes, and the special closed
//! forms in the no-truncation and boundary regimes.

use num_complex::Complex64;

use crate::ensembles::{
    sample_haar_unitary, sample_jacobi_radial, sample_truncation_radial,
};
use crate::error::{Error, Result};
use crate::exact::rational_to_f64;
use crate::linalg::{adjoint, complex_powi, det, CMat};
use crate::montecarlo::{compare, compare_estimates, estimate_mean};
use crate::partitions::enumerate_partitions;
use crate::symmetric::{weyl_dimension, SchurEvaluator};

use super::{
    preset_contraction_diag, result_from_subs, CheckConfig, CheckResult, SideValue, Sub,
    STREAM_BLOCK_A, STREAM_BLOCK_B, STREAM_BLOCK_C, STREAM_BLOCK_D,
};

/// Truncated series `sum_l s_l(1_m) s_l(1_n) s_l(beta) / s_l(1_N)` over
/// partitions of length <= min(m,n) and weight <= cutoff, plus a geometric
/// tail bound in the max modulus of `beta`.
fn inverse_det_series(
    beta: &[Complex64],
    dim: u32,
    n: u32,
    m: u32,
    cutoff: u32,
) -> (Complex64, f64) {
    let ev = SchurEvaluator::new(beta, cutoff);
    let len_bound = (n.min(m) as usize).min(beta.len());
    let mut total = Complex64::new(0.0, 0.0);
    for lambda in enumerate_partitions(cutoff, len_bound as u32) {
        let dims = rational_to_f64(&weyl_dimension(&lambda, m))
            * rational_to_f64(&weyl_dimension(&lambda, n))
            / rational_to_f64(&weyl_dimension(&lambda, dim));
        total += ev.eval(&lambda) * Complex64::new(dims, 0.0);
    }
    // crude tail bound: dimensions grow at most like the full product
    // count, r^w decays geometrically for r < 1
    let r = beta.iter().map(|b| b.norm()).fold(0.0f64, f64::max);
    let per_weight = ((m * n) as f64).powi(2);
    let tail = if r < 1.0 {
        per_weight * r.powi(cutoff as i32 + 1) / (1.0 - r)
    } else {
        f64::INFINITY
    };
    (total, tail)
}

/// Finite dual series `sum_l s_l(1_m) s_l(1_n) s_{l'}(beta) / s_{l'}(1_N)`
/// over partitions in the min(m,n) x N box; exact up to float rounding.
fn plus_det_series(beta: &[Complex64], dim: u32, n: u32, m: u32) -> Complex64 {
    let len_bound = n.min(m);
    let max_weight = len_bound * dim;
    let ev = SchurEvaluator::new(beta, max_weight);
    let mut total = Complex64::new(0.0, 0.0);
    for lambda in enumerate_partitions(max_weight, len_bound) {
        if lambda.part(1) > dim {
            continue;
        }
        let conj = lambda.conjugate();
        let dims = rational_to_f64(&weyl_dimension(&lambda, m))
            * rational_to_f64(&weyl_dimension(&lambda, n))
            / rational_to_f64(&weyl_dimension(&conj, dim));
        total += ev.eval(&conj) * Complex64::new(dims, 0.0);
    }
    total
}

pub fn check_resolvent_expansion(cfg: &CheckConfig) -> Result<CheckResult> {
    let (dim, n, m) = (cfg.dim as usize, cfg.rows as usize, cfg.cols as usize);
    if !(1 <= m && m <= n && n <= dim) {
        return Err(Error::RegimeViolation(format!(
            "needs 1 <= m <= n <= N, got N={dim} n={n} m={m}"
        )));
    }
    let mut cfg = cfg.clone();
    let a_mat = preset_contraction_diag(dim, 0.6);
    let b_mat = preset_contraction_diag(dim, 0.5);
    cfg.record_preset("A", &a_mat);
    cfg.record_preset("B", &b_mat);
    // eigenvalues of B*A (diagonal presets)
    let beta: Vec<Complex64> = (0..dim)
        .map(|j| b_mat[(j, j)].conj() * a_mat[(j, j)])
        .collect();
    let id = CMat::identity(dim, dim);

    let mut subs = Vec::new();

    // ---- inverse-determinant family over the compact truncation law ----
    let inv_haar = estimate_mean(
        |rng| {
            let u = sample_haar_unitary(dim, rng);
            let d1 = complex_powi(det(&(&id - &a_mat * &u)), m as i64);
            let d2 = complex_powi(det(&(&id - adjoint(&u) * adjoint(&b_mat))), n as i64);
            (d1 * d2).inv()
        },
        cfg.n_samples,
        cfg.seed,
        STREAM_BLOCK_A,
        8,
    )?;
    let inv_ens = estimate_mean(
        |rng| {
            let x = sample_truncation_radial(dim, n, m, rng).expect("regime ok");
            let mut prod = Complex64::new(1.0, 0.0);
            for &xi in &x {
                for bj in &beta {
                    prod /= Complex64::new(1.0, 0.0) - bj * xi;
                }
            }
            prod
        },
        cfg.n_samples,
        cfg.seed,
        STREAM_BLOCK_B,
        8,
    )?;
    subs.push(Sub::new(
        "inverse determinants: group side vs radial side",
        SideValue::from_estimate(&inv_haar),
        SideValue::from_estimate(&inv_ens),
        compare_estimates(&inv_haar, &inv_ens, cfg.z_threshold, cfg.stderr_floor),
    ));

    let (series, tail) = inverse_det_series(&beta, cfg.dim, cfg.rows, cfg.cols, cfg.series_cutoff);
    subs.push(Sub::new(
        "inverse determinants: group side vs Schur series",
        SideValue::from_estimate(&inv_haar),
        SideValue::from_value(series.re),
        compare(&inv_haar, series, cfg.z_threshold, cfg.stderr_floor),
    ));

    // ---- positive-determinant family over the heavy-tailed law ----
    let plus_haar = estimate_mean(
        |rng| {
            let u = sample_haar_unitary(dim, rng);
            let d1 = complex_powi(det(&(&id + &a_mat * &u)), m as i64);
            let d2 = complex_powi(det(&(&id + adjoint(&u) * adjoint(&b_mat))), n as i64);
            d1 * d2
        },
        cfg.n_samples,
        cfg.seed,
        STREAM_BLOCK_C,
        8,
    )?;
    let plus_ens = estimate_mean(
        |rng| {
            let y = sample_jacobi_radial(n - m, dim, m, rng).expect("parameters ok");
            let mut prod = Complex64::new(1.0, 0.0);
            for &yi in &y {
                let xi = yi / (1.0 - yi);
                for bj in &beta {
                    prod *= Complex64::new(1.0, 0.0) + bj * xi;
                }
            }
            prod
        },
        cfg.n_samples,
        cfg.seed,
        STREAM_BLOCK_D,
        8,
    )?;
    let plus_exact = plus_det_series(&beta, cfg.dim, cfg.rows, cfg.cols);
    subs.push(Sub::new(
        "determinant products: group side vs radial side",
        SideValue::from_estimate(&plus_haar),
        SideValue::from_estimate(&plus_ens),
        compare_estimates(&plus_haar, &plus_ens, cfg.z_threshold, cfg.stderr_floor),
    ));
    subs.push(Sub::new(
        "determinant products: group side vs finite Schur sum",
        SideValue::from_estimate(&plus_haar),
        SideValue::from_value(plus_exact.re),
        compare(&plus_haar, plus_exact, cfg.z_threshold, cfg.stderr_floor),
    ));
    subs.push(Sub::new(
        "determinant products: radial side vs finite Schur sum",
        SideValue::from_estimate(&plus_ens),
        SideValue::from_value(plus_exact.re),
        compare(&plus_ens, plus_exact, cfg.z_threshold, cfg.stderr_floor),
    ));

    // ---- special regimes for the square inverse-determinant case ----
    let mut regime = "N>=n+m".to_string();
    if m == n && m == dim {
        // no truncation: closed form det(I - B*A)^{-N}
        let closed = complex_powi(det(&(&id - adjoint(&b_mat) * &a_mat)), -(dim as i64));
        subs.push(Sub::new(
            "no-truncation closed form",
            SideValue::from_estimate(&inv_haar),
            SideValue::from_value(closed.re),
            compare(&inv_haar, closed, cfg.z_threshold, cfg.stderr_floor),
        ));
        regime = "m=N".into();
    } else if m == n && dim < 2 * m {
        // boundary regime: Z runs over the (N-m) x (N-m) truncation and a
        // constant determinant factor splits off
        let k = dim - m;
        let scale = {
            let mut prod = Complex64::new(1.0, 0.0);
            for bj in &beta {
                prod *= Complex64::new(1.0, 0.0) - bj;
            }
            complex_powi(prod, -(2 * m as i64 - dim as i64))
        };
        let boundary = estimate_mean(
            |rng| {
                let x = sample_truncation_radial(dim, k, k, rng).expect("k <= N");
                let mut prod = Complex64::new(1.0, 0.0);
                for &xi in &x {
                    for bj in &beta {
                        prod /= Complex64::new(1.0, 0.0) - bj * xi;
                    }
                }
                prod * scale
            },
            cfg.n_samples,
            cfg.seed,
            super::STREAM_BLOCK_SWEEP,
            8,
        )?;
        subs.push(Sub::new(
            "boundary-regime radial form",
            SideValue::from_estimate(&inv_haar),
            SideValue::from_estimate(&boundary),
            compare_estimates(&inv_haar, &boundary, cfg.z_threshold, cfg.stderr_floor),
        ));
        regime = "N<2m<2N".into();
    } else if dim < n + m {
        regime = "N<n+m".into();
    }

    let extra = format!("series cutoff K={}, geometric tail bound {tail:.2e}", cfg.series_cutoff);
    Ok(result_from_subs(&cfg, regime, subs, extra))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_regime_three_routes() {
        let cfg = CheckConfig::new("check_resolvent_expansion")
            .with_dims(4, 2, 2)
            .with_samples(60_000);
        let res = check_resolvent_expansion(&cfg).unwrap();
        assert!(res.pass, "{}", res.notes);
        assert_eq!(res.regime, "N>=n+m");
    }

    #[test]
    fn no_truncation_closed_form() {
        let cfg = CheckConfig::new("check_resolvent_expansion")
            .with_dims(2, 2, 2)
            .with_samples(60_000);
        let res = check_resolvent_expansion(&cfg).unwrap();
        assert!(res.pass, "{}", res.notes);
        assert_eq!(res.regime, "m=N");
    }

    #[test]
    fn boundary_regime() {
        let cfg = CheckConfig::new("check_resolvent_expansion")
            .with_dims(3, 2, 2)
            .with_samples(60_000);
        let res = check_resolvent_expansion(&cfg).unwrap();
        assert!(res.pass, "{}", res.notes);
        assert_eq!(res.regime, "N<2m<2N");
    }

    #[test]
    fn rectangular_case() {
        let cfg = CheckConfig::new("check_resolvent_expansion")
            .with_dims(2, 2, 1)
            .with_samples(60_000);
        let res = check_resolvent_expansion(&cfg).unwrap();
        assert!(res.pass, "{}", res.notes);
    }
}
