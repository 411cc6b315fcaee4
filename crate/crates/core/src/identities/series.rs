//! Schur-function series identities: the exponential expansion, the two
//! product expansions and their duals, binomial-power expansions at real
//! and integer exponents, the expansion-coefficient determinants, and the
//! generalized functional identity with a padding-stable coefficient
//! sequence.

use num_complex::Complex64;

use crate::ensembles::{sample_haar_unitary, sample_stiefel};
use crate::error::{Error, Result};
use crate::exact::{rational_from_int, Rational};
use crate::linalg::adjoint;
use crate::montecarlo::{compare_estimates, estimate_mean};
use crate::partitions::enumerate_partitions;
use crate::symmetric::{
    exp_coeff, hua_coeff_bosonic, hua_coeff_fermionic_exact, multiplicative_expansion_coeff,
    schur_eval, symmetric_bases_from_power_sums, power_sums_of_values, weyl_dimension,
    SchurEvaluator, SymmetricBasis,
};

use super::{
    complex_of, preset_full_matrix, result_from_subs, CheckConfig, CheckResult, SideValue, Sub,
    STREAM_BLOCK_A, STREAM_BLOCK_B,
};

const SERIES_TOL: f64 = 1e-8;
const EXP_TOL: f64 = 1e-9;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Geometric tail bound for a truncated expansion whose terms are bounded
/// by `count_factor * r^w` past weight `cutoff`.
fn tail_bound(r: f64, cutoff: u32, count_factor: f64) -> f64 {
    if r >= 1.0 {
        return f64::INFINITY;
    }
    count_factor * r.powi(cutoff as i32 + 1) / (1.0 - r)
}

pub fn check_series_expansions(cfg: &CheckConfig) -> Result<CheckResult> {
    let cfg = cfg.clone();
    let cutoff = cfg.series_cutoff.max(12);
    let mut subs = Vec::new();

    // ---- exponential expansion: exp(sum x) = sum_l c_l s_l(x) ----
    {
        let x = [0.3f64, 0.2];
        let ev = SchurEvaluator::new(&x, 12);
        let mut sum = 0.0;
        for lambda in enumerate_partitions(12, x.len() as u32) {
            sum += crate::exact::rational_to_f64(&exp_coeff(&lambda)) * ev.eval(&lambda);
        }
        subs.push(Sub::within(
            "exponential expansion at weight 12",
            sum,
            0.5f64.exp(),
            EXP_TOL,
        ));
    }

    // ---- product expansion (two spectra): the extreme admissible radius
    // at one variable, a softer radius at three ----
    {
        let t1 = [0.8f64];
        let x1 = [0.625f64];
        let (sum, prod, bound) = cauchy_partial(&t1, &x1, cutoff);
        subs.push(Sub::within(
            format!("product expansion m=n=1, radius 0.5, tail bound {bound:.1e}"),
            sum,
            prod,
            SERIES_TOL,
        ));
        let t3 = [0.6f64, 0.5, 0.4];
        let x3 = [0.5f64, 0.4, 0.3];
        let (sum, prod, bound) = cauchy_partial(&t3, &x3, cutoff);
        subs.push(Sub::within(
            format!("product expansion m=n=3, tail bound {bound:.1e}"),
            sum,
            prod,
            SERIES_TOL,
        ));
    }

    // ---- dual product expansion: finite, exact over rationals ----
    {
        for (t, x) in [
            (vec![rat(1, 2), rat(1, 3)], vec![rat(2, 5), rat(-1, 4)]),
            (
                vec![rat(3, 4), rat(1, 5), rat(-1, 2)],
                vec![rat(1, 3), rat(1, 7)],
            ),
        ] {
            let mut prod = Rational::from_integer(1.into());
            for ti in &t {
                for xj in &x {
                    prod *= Rational::from_integer(1.into()) + ti.clone() * xj.clone();
                }
            }
            let mut sum = Rational::from_integer(0.into());
            let max_w = (t.len() * x.len()) as u32;
            for lambda in enumerate_partitions(max_w, t.len() as u32) {
                if lambda.part(1) as usize > x.len() {
                    continue;
                }
                sum += schur_eval(&lambda, &t) * schur_eval(&lambda.conjugate(), &x);
            }
            subs.push(Sub::exact(
                format!("dual product expansion, {}x{} rational spectra", t.len(), x.len()),
                &sum,
                &prod,
            ));
        }
    }

    // ---- binomial-power expansions, real exponent ----
    for (a, z) in [
        (0.5f64, vec![0.45f64, 0.3, 0.2]),
        (1.0, vec![0.4f64, 0.3, 0.2]),
        (2.5, vec![0.3f64, 0.2, 0.1]),
        (4.0, vec![0.25f64, 0.15, 0.1]),
    ] {
        let m = z.len();
        let ev = SchurEvaluator::new(&z, cutoff);
        let mut minus = 0.0f64;
        let mut plus = 0.0f64;
        for lambda in enumerate_partitions(cutoff, m as u32) {
            let dim_m = crate::exact::rational_to_f64(&weyl_dimension(&lambda, m as u32));
            let sv = ev.eval(&lambda);
            minus += hua_coeff_bosonic(&lambda, a, m)? * dim_m * sv;
            plus += crate::symmetric::hua_coeff_fermionic(&lambda, a, m)? * dim_m * sv;
        }
        let prod_minus: f64 = z.iter().map(|&v| (1.0 - v).powf(-a)).product();
        let prod_plus: f64 = z.iter().map(|&v| (1.0 + v).powf(a)).product();
        let r = z.iter().cloned().fold(0.0f64, f64::max);
        let bound = tail_bound(r, cutoff, ((m * m) as f64) * (1.0 + a).powi(m as i32));
        subs.push(Sub::within(
            format!("inverse-power expansion a={a}, m={m}, tail bound {bound:.1e}"),
            minus,
            prod_minus,
            SERIES_TOL,
        ));
        subs.push(Sub::within(
            format!("power expansion a={a}, m={m}"),
            plus,
            prod_plus,
            SERIES_TOL,
        ));
    }

    // ---- binomial-power expansion, integer exponent: exact finite sum ----
    {
        let a = 3i64;
        let z = vec![rat(1, 2), rat(-1, 3)];
        let m = z.len();
        let mut prod = Rational::from_integer(1.into());
        for zj in &z {
            let base = Rational::from_integer(1.into()) + zj.clone();
            prod *= base.clone() * base.clone() * base;
        }
        let mut sum = Rational::from_integer(0.into());
        for lambda in enumerate_partitions((a as u32) * m as u32, m as u32) {
            if lambda.part(1) as i64 > a {
                continue;
            }
            let beta = hua_coeff_fermionic_exact(&lambda, a, m)?;
            sum += beta * weyl_dimension(&lambda, m as u32) * schur_eval(&lambda, &z);
        }
        subs.push(Sub::exact("integer power expansion a=3, m=2", &sum, &prod));
    }

    // ---- expansion-coefficient determinants ----
    {
        // exponential coefficients from the determinant with alpha_r = 1/r!
        let alpha: Vec<Rational> = (0..10u64)
            .map(|r| Rational::new(1.into(), crate::exact::factorial(r)))
            .collect();
        let mut all_match = true;
        for lambda in enumerate_partitions(4, 3) {
            for m in lambda.length().max(1)..=3 {
                if multiplicative_expansion_coeff(&alpha, &lambda, m)? != exp_coeff(&lambda) {
                    all_match = false;
                }
            }
        }
        // complete/elementary coefficient sequences give the Schur function
        // and its conjugate
        let t = vec![rat(2, 5), rat(-1, 3)];
        let p = power_sums_of_values(&t, 10);
        let h = symmetric_bases_from_power_sums(&p, 10, SymmetricBasis::Complete)?;
        let e = symmetric_bases_from_power_sums(&p, 10, SymmetricBasis::Elementary)?;
        for lambda in enumerate_partitions(4, 3) {
            if multiplicative_expansion_coeff(&h, &lambda, 3)? != schur_eval(&lambda, &t) {
                all_match = false;
            }
            if multiplicative_expansion_coeff(&e, &lambda, 3)?
                != schur_eval(&lambda.conjugate(), &t)
            {
                all_match = false;
            }
        }
        // binomial coefficient sequences reproduce the closed coefficients
        // at integer exponent
        for lambda in enumerate_partitions(3, 2) {
            let a = 4i64;
            let gamma: Vec<Rational> = (0..8u64)
                .map(|r| {
                    crate::exact::rising(&Rational::from_integer(a.into()), r)
                        / Rational::from_integer(crate::exact::factorial(r))
                })
                .collect();
            let det_route = multiplicative_expansion_coeff(&gamma, &lambda, 2)?;
            let closed = crate::symmetric::hua_coeff_bosonic_exact(&lambda, a, 2)?
                * weyl_dimension(&lambda, 2);
            if det_route != closed {
                all_match = false;
            }
        }
        subs.push(Sub::exact(
            "coefficient determinants reproduce closed coefficients",
            &rational_from_int(if all_match { 1 } else { 0 }),
            &rational_from_int(1),
        ));
    }

    // ---- generalized functional identity, Monte Carlo both sides ----
    {
        let (dim, m) = (cfg.dim as usize, 1usize);
        if cfg.dim < 1 {
            return Err(Error::RegimeViolation("needs N >= 1".into()));
        }
        let mut cfg_mc = cfg.clone();
        let x = preset_full_matrix(dim, m, cfg.seed, 1, 1.0);
        let y = preset_full_matrix(dim, m, cfg.seed, 2, 1.0);
        cfg_mc.record_preset("X", &x);
        cfg_mc.record_preset("Y", &y);
        let (t, a) = (0.4f64, 1.5f64);
        let xx = (adjoint(&x) * &x)[(0, 0)].re;
        let yy = (adjoint(&y) * &y)[(0, 0)].re;
        let xys = &x * adjoint(&y);

        let lhs = estimate_mean(
            |rng| {
                let u = sample_haar_unitary(dim, rng);
                // rank-one coupling: the only nonzero eigenvalue of XY*U
                let w = (&xys * &u).diagonal().sum();
                let g = Complex64::new(1.0, 0.0) - Complex64::new(t, 0.0) * w;
                complex_of(g.norm().powf(-2.0 * a))
            },
            cfg.n_samples,
            cfg.seed,
            STREAM_BLOCK_A,
            8,
        )?;
        let rhs = estimate_mean(
            |rng| {
                let q = sample_stiefel(dim, 1, rng);
                let g1 = (Complex64::new(1.0, 0.0) - Complex64::new(t * xx, 0.0) * q[(0, 0)])
                    .powf(-a);
                let g2 = (Complex64::new(1.0, 0.0) - Complex64::new(t * yy, 0.0) * q[(0, 0)])
                    .powf(-a);
                g1 * g2.conj()
            },
            cfg.n_samples,
            cfg.seed,
            STREAM_BLOCK_B,
            8,
        )?;
        let note = format!(
            "functional h(z)=(1-{t}z)^-{a}, alpha_0=1; N={}, m=1",
            cfg.dim
        );
        subs.push(Sub::new(
            format!("generalized functional identity ({note})"),
            SideValue::from_estimate(&lhs),
            SideValue::from_estimate(&rhs),
            compare_estimates(&lhs, &rhs, cfg.z_threshold, cfg.stderr_floor),
        ));
        return Ok(result_from_subs(
            &cfg_mc,
            "series radius 0.5; functional identity at m=1",
            subs,
            format!("series cutoff K={cutoff}"),
        ));
    }
}

fn cauchy_partial(t: &[f64], x: &[f64], cutoff: u32) -> (f64, f64, f64) {
    let et = SchurEvaluator::new(t, cutoff);
    let ex = SchurEvaluator::new(x, cutoff);
    let mut sum = 0.0;
    for lambda in enumerate_partitions(cutoff, t.len().min(x.len()) as u32) {
        sum += et.eval(&lambda) * ex.eval(&lambda);
    }
    let mut prod = 1.0;
    let mut r = 0.0f64;
    for &ti in t {
        for &xj in x {
            prod /= 1.0 - ti * xj;
            r = r.max((ti * xj).abs());
        }
    }
    let count_factor = ((t.len() * x.len()) as f64).powi(2);
    (sum, prod, tail_bound(r, cutoff, count_factor))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_check_passes() {
        let cfg = CheckConfig::new("check_series_expansions")
            .with_dims(3, 1, 1)
            .with_samples(60_000);
        let res = check_series_expansions(&cfg).unwrap();
        assert!(res.pass, "{}", res.notes);
    }

    #[test]
    fn cauchy_residual_decreases_geometrically() {
        let t = [0.6f64, 0.5, 0.4];
        let x = [0.5f64, 0.4, 0.3];
        let (s10, p, _) = cauchy_partial(&t, &x, 10);
        let (s20, _, _) = cauchy_partial(&t, &x, 20);
        let (s30, _, _) = cauchy_partial(&t, &x, 30);
        let r10 = (s10 - p).abs();
        let r20 = (s20 - p).abs();
        let r30 = (s30 - p).abs();
        assert!(r20 < r10 * 0.1, "r10={r10:e} r20={r20:e}");
        assert!(r30 < r20 * 0.1 || r30 < 1e-12, "r20={r20:e} r30={r30:e}");
        assert!(r30 <= 1e-8);
    }
}
