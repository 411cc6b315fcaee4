//! Schur-weighted Selberg integrals: exact agreement of the product form
//! with the Gram/Beta determinant form, stochastic agreement of normalized
//! radial-ensemble averages with the closed-form ratios, and the exact
//! link between the compact moment and the binomial-power coefficients.

use num_complex::Complex64;

use crate::closed_forms::{
    rhs_schur_moment_bosonic, rhs_schur_moment_fermionic, schur_selberg_bosonic,
    schur_selberg_fermionic, selberg_constant_bosonic, selberg_constant_fermionic, Derivation,
};
use crate::ensembles::sample_jacobi_radial;
use crate::error::{Error, Result};
use crate::exact::rational_to_f64;
use crate::montecarlo::{compare, estimate_means_multi};
use crate::partitions::{enumerate_partitions, Partition};
use crate::symmetric::{hua_coeff_bosonic_exact, weyl_dimension, SchurEvaluator};

use super::{
    result_from_subs, CheckConfig, CheckResult, SideValue, Sub, STREAM_BLOCK_A, STREAM_BLOCK_B,
};

pub fn check_selberg(cfg: &CheckConfig) -> Result<CheckResult> {
    let (dim, n, m) = (cfg.dim, cfg.rows, cfg.cols);
    if !(1 <= m && m <= n && n <= dim) {
        return Err(Error::RegimeViolation(format!(
            "needs 1 <= m <= n <= N, got N={dim} n={n} m={m}"
        )));
    }
    if dim < n + m {
        return Err(Error::RegimeViolation(format!(
            "compact radial law needs N >= n+m, got N={dim} n={n} m={m}"
        )));
    }
    let cfg = cfg.clone();
    let mut subs = Vec::new();

    // ---- exact route agreement on an integer grid ----
    let mut mismatches = 0usize;
    let mut cases = 0usize;
    for mm in 1..=3u32 {
        for lambda in enumerate_partitions(4, mm) {
            for p in 1..=6u32 {
                for q in 1..=6u32 {
                    let a = schur_selberg_bosonic(
                        &lambda,
                        p as f64,
                        q as f64,
                        mm,
                        Derivation::ProductForm,
                    )?;
                    let b = schur_selberg_bosonic(
                        &lambda,
                        p as f64,
                        q as f64,
                        mm,
                        Derivation::GramDeterminant,
                    )?;
                    cases += 1;
                    if a.as_exact() != b.as_exact() {
                        mismatches += 1;
                    }
                    let fa = schur_selberg_fermionic(
                        &lambda,
                        p as f64,
                        q as f64,
                        mm,
                        Derivation::ProductForm,
                    );
                    let fb = schur_selberg_fermionic(
                        &lambda,
                        p as f64,
                        q as f64,
                        mm,
                        Derivation::GramDeterminant,
                    );
                    match (fa, fb) {
                        (Ok(x), Ok(y)) => {
                            cases += 1;
                            if x.as_exact() != y.as_exact() {
                                mismatches += 1;
                            }
                        }
                        (Err(Error::Integrability { .. }), Err(Error::Integrability { .. })) => {}
                        _ => mismatches += 1,
                    }
                }
            }
        }
    }
    subs.push(Sub::exact(
        format!("product form = Gram determinant ({cases} integer cases, mismatches)"),
        &crate::exact::rational_from_int(mismatches as i64),
        &crate::exact::rational_from_int(0),
    ));

    // ---- exact link to the binomial-power coefficients: the normalized
    // compact moment equals s_l(1_n)/beta_l at integer N ----
    for lambda in enumerate_partitions(3, m) {
        let lhs = rhs_schur_moment_bosonic(&lambda, dim, n, m)?;
        let beta = hua_coeff_bosonic_exact(&lambda, dim as i64, m as usize)?;
        let rhs = weyl_dimension(&lambda, n) / beta;
        subs.push(Sub::exact(
            format!("normalized moment vs coefficient ratio, lambda=({lambda})"),
            &lhs,
            &rhs,
        ));
    }

    // ---- stochastic: compact radial family ----
    let lambdas: Vec<Partition> = match &cfg.lambda {
        Some(l) => vec![l.clone()],
        None => enumerate_partitions(2, m),
    };
    let max_weight = lambdas.iter().map(|l| l.weight()).max().unwrap_or(1).max(1);
    let a_param = (n - m) as usize;
    let b_param = (dim - n - m) as usize;
    let compact = estimate_means_multi(
        |rng, out| {
            let x = sample_jacobi_radial(a_param, b_param, m as usize, rng).expect("validated");
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
        // two reference routes: Weyl ratio and normalized product form
        let reference = rhs_schur_moment_bosonic(lambda, dim, n, m)?;
        let via_selberg = schur_selberg_bosonic(
            lambda,
            (n - m + 1) as f64,
            (dim - m - n + 1) as f64,
            m,
            Derivation::ProductForm,
        )?;
        let constant = selberg_constant_bosonic(dim, n, m)?;
        let normalized = via_selberg.as_exact().unwrap().clone() / constant;
        subs.push(Sub::exact(
            format!("Weyl ratio = normalized integral, lambda=({lambda})"),
            &reference,
            &normalized,
        ));
        subs.push(Sub::new(
            format!("compact radial average, lambda=({lambda})"),
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

    // ---- stochastic: heavy-tailed radial family at a safe moment ----
    let heavy_lambda = Partition::new(&[1]).unwrap();
    if dim as usize >= heavy_lambda.weight() as usize + m as usize + 1 {
        let heavy = estimate_means_multi(
            |rng, out| {
                let y = sample_jacobi_radial((n - m) as usize, dim as usize, m as usize, rng)
                    .expect("validated");
                let x: Vec<f64> = y.iter().map(|&v| v / (1.0 - v)).collect();
                let ev = SchurEvaluator::new(&x, 1);
                out[0] = Complex64::new(ev.eval(&heavy_lambda), 0.0);
            },
            1,
            cfg.n_samples,
            cfg.seed,
            STREAM_BLOCK_B,
            8,
        )?;
        let reference = rhs_schur_moment_fermionic(&heavy_lambda, dim, n, m)?;
        let via_selberg = schur_selberg_fermionic(
            &heavy_lambda,
            (n - m + 1) as f64,
            (dim + 1) as f64,
            m,
            Derivation::ProductForm,
        )?;
        let constant = selberg_constant_fermionic(dim, n, m)?;
        let normalized = via_selberg.as_exact().unwrap().clone() / constant;
        subs.push(Sub::exact(
            "dual Weyl ratio = normalized integral, lambda=(1)",
            &reference,
            &normalized,
        ));
        subs.push(Sub::new(
            "heavy-tailed radial average, lambda=(1)",
            SideValue::from_estimate(&heavy[0]),
            SideValue::from_exact(&reference),
            compare(
                &heavy[0],
                Complex64::new(rational_to_f64(&reference), 0.0),
                cfg.z_threshold,
                cfg.stderr_floor,
            ),
        ));
    }

    Ok(result_from_subs(
        &cfg,
        "integer weights; N>=n+m",
        subs,
        "",
    ))
}
