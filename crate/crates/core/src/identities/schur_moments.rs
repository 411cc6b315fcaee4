//! Schur-function moment laws of the truncation and heavy-tailed radial
//! ensembles, including the conjugation-twisted variant with fixed outer
//! matrices. All partitions under one weight bound share every draw.

use num_complex::Complex64;

use crate::ensembles::{sample_jacobi_radial, sample_stiefel, sample_truncation_radial};
use crate::error::{Error, Result};
use crate::exact::{rational_to_f64, Rational};
use crate::linalg::{adjoint, CMat};
use crate::montecarlo::{compare, estimate_means_multi};
use crate::partitions::{enumerate_partitions, Partition};
use crate::symmetric::{power_sums, schur_eval, SchurEvaluator};

use super::{
    result_from_subs, CheckConfig, CheckResult, SideValue, Sub, STREAM_BLOCK_A, STREAM_BLOCK_B,
    STREAM_BLOCK_C,
};

const LAMBDA_WEIGHT_BOUND: u32 = 3;

/// Dyadic diagonal preset `diag((base-1-i)/16)`, exactly representable in
/// f64 so the reference values stay exact rationals.
fn dyadic_diag(n: usize, base: u32) -> (CMat, Vec<Rational>) {
    let m = CMat::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new((base - 1 - i as u32) as f64 / 16.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let spectrum = (0..n)
        .map(|i| Rational::new(((base - 1 - i as u32) as i64).into(), 16.into()))
        .collect();
    (m, spectrum)
}

pub fn check_schur_moments(cfg: &CheckConfig) -> Result<CheckResult> {
    let (dim, n, m) = (cfg.dim as usize, cfg.rows as usize, cfg.cols as usize);
    if !(1 <= m && m <= n && n <= dim) {
        return Err(Error::RegimeViolation(format!(
            "needs 1 <= m <= n <= N, got N={dim} n={n} m={m}"
        )));
    }
    let lambdas: Vec<Partition> = match &cfg.lambda {
        Some(l) => {
            if l.length() > m {
                return Err(Error::BadParameter(format!(
                    "lambda {l} is longer than m={m}; the moment is identically zero"
                )));
            }
            vec![l.clone()]
        }
        None => enumerate_partitions(LAMBDA_WEIGHT_BOUND, m as u32),
    };
    let max_weight = lambdas.iter().map(|l| l.weight()).max().unwrap_or(1).max(1);
    let mut cfg = cfg.clone();
    let mut subs = Vec::new();

    // compact radial law of the n x m truncation block; covers both the
    // interior regime and the pinned-spectrum regime N < n+m
    let compact = estimate_means_multi(
        |rng, out| {
            let x = sample_truncation_radial(dim, n, m, rng).expect("regime pre-validated");
            let ev = SchurEvaluator::new(&x, max_weight);
            for (slot, lambda) in out.iter_mut().zip(&lambdas) {
                *slot = Complex64::new(ev.eval(lambda), 0.0);
            }
        },
        lambdas.len(),
        cfg.n_samples,
        cfg.seed,
        STREAM_BLOCK_A,
        8,
    )?;
    for (est, lambda) in compact.iter().zip(&lambdas) {
        let reference = crate::closed_forms::rhs_schur_moment_bosonic(
            lambda,
            cfg.dim,
            cfg.rows,
            cfg.cols,
        )?;
        subs.push(Sub::new(
            format!("compact law, lambda=({lambda})"),
            SideValue::from_estimate(est),
            SideValue::from_exact(&reference),
            compare(
                est,
                Complex64::new(rational_to_f64(&reference), 0.0),
                cfg.z_threshold,
                cfg.stderr_floor,
            ),
        ));
    }

    // heavy-tailed law: x = y/(1-y) with y Jacobi-distributed; the mean of
    // s_lambda exists only for N >= |lambda| + m + 1
    let eligible: Vec<Partition> = lambdas
        .iter()
        .filter(|l| dim >= l.weight() as usize + m + 1)
        .cloned()
        .collect();
    let mut skipped = lambdas.len() - eligible.len();
    if !eligible.is_empty() {
        let heavy = estimate_means_multi(
            |rng, out| {
                let y = sample_jacobi_radial(n - m, dim, m, rng).expect("parameters validated");
                let x: Vec<f64> = y.iter().map(|&v| v / (1.0 - v)).collect();
                let ev = SchurEvaluator::new(&x, max_weight);
                for (slot, lambda) in out.iter_mut().zip(&eligible) {
                    *slot = Complex64::new(ev.eval(lambda), 0.0);
                }
            },
            eligible.len(),
            cfg.n_samples,
            cfg.seed,
            STREAM_BLOCK_B,
            8,
        )?;
        for (est, lambda) in heavy.iter().zip(&eligible) {
            let reference = crate::closed_forms::rhs_schur_moment_fermionic(
                lambda,
                cfg.dim,
                cfg.rows,
                cfg.cols,
            )?;
            subs.push(Sub::new(
                format!("heavy-tailed law, lambda=({lambda})"),
                SideValue::from_estimate(est),
                SideValue::from_exact(&reference),
                compare(
                    est,
                    Complex64::new(rational_to_f64(&reference), 0.0),
                    cfg.z_threshold,
                    cfg.stderr_floor,
                ),
            ));
        }
    } else {
        skipped = lambdas.len();
    }

    // twisted variant: fixed diagonal X (n x n) and Y (m x m),
    // E s_lambda(X Q Y Q*) = s_lambda(X) s_lambda(Y) / s_lambda(1_N)
    let (x_mat, x_spec) = dyadic_diag(n, 16);
    let (y_mat, y_spec) = dyadic_diag(m, 8);
    cfg.record_preset("X", &x_mat);
    cfg.record_preset("Y", &y_mat);
    let twisted = estimate_means_multi(
        |rng, out| {
            let q = sample_stiefel(dim, m, rng).view((0, 0), (n, m)).into_owned();
            let prod = &x_mat * &q * &y_mat * adjoint(&q);
            let p = power_sums(&prod, 2 * max_weight as usize).expect("square product");
            let ev = SchurEvaluator::from_power_sums(&p, n, max_weight).expect("sized");
            for (slot, lambda) in out.iter_mut().zip(&lambdas) {
                *slot = ev.eval(lambda);
            }
        },
        lambdas.len(),
        cfg.n_samples,
        cfg.seed,
        STREAM_BLOCK_C,
        8,
    )?;
    for (est, lambda) in twisted.iter().zip(&lambdas) {
        let reference = schur_eval(lambda, &x_spec) * schur_eval(lambda, &y_spec)
            / crate::symmetric::weyl_dimension(lambda, cfg.dim);
        subs.push(Sub::new(
            format!("twisted moment, lambda=({lambda})"),
            SideValue::from_estimate(est),
            SideValue::from_exact(&reference),
            compare(
                est,
                Complex64::new(rational_to_f64(&reference), 0.0),
                cfg.z_threshold,
                cfg.stderr_floor,
            ),
        ));
    }

    let regime = if dim < n + m {
        "N<n+m (pinned spectrum)"
    } else {
        "N>=n+m"
    };
    let extra = if skipped > 0 {
        format!("{skipped} heavy-tailed case(s) skipped: need N >= |lambda|+m+1")
    } else {
        String::new()
    };
    Ok(result_from_subs(&cfg, regime, subs, extra))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_small_grid() {
        let cfg = CheckConfig::new("check_schur_moments")
            .with_dims(4, 2, 1)
            .with_samples(60_000);
        let res = check_schur_moments(&cfg).unwrap();
        assert!(res.pass, "{}", res.notes);
        assert_eq!(res.regime, "N>=n+m");
    }

    #[test]
    fn moments_pinned_regime() {
        let cfg = CheckConfig::new("check_schur_moments")
            .with_dims(3, 2, 2)
            .with_samples(60_000);
        let res = check_schur_moments(&cfg).unwrap();
        assert!(res.pass, "{}", res.notes);
        assert!(res.regime.contains("pinned"));
    }

    #[test]
    fn single_lambda_fermionic_example() {
        // heavy-tailed reference 1/3 at lambda=(1), N=3, n=m=1
        let cfg = CheckConfig::new("check_schur_moments")
            .with_dims(3, 1, 1)
            .with_lambda(Partition::new(&[1]).unwrap())
            .with_samples(60_000);
        let res = check_schur_moments(&cfg).unwrap();
        assert!(res.pass, "{}", res.notes);
        assert!(res.notes.contains("heavy-tailed law"), "{}", res.notes);
    }

    #[test]
    fn rejects_overlong_lambda() {
        let cfg = CheckConfig::new("check_schur_moments")
            .with_dims(4, 2, 1)
            .with_lambda(Partition::new(&[1, 1]).unwrap());
        assert!(check_schur_moments(&cfg).is_err());
    }
}
