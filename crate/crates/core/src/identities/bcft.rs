//! The exponential group-integral identity in its three parameter regimes,
//! and the alternative weighted-U(m) form with its SU(N) variant.



use crate::ensembles::{
    sample_boundary_truncation, sample_haar_unitary, sample_special_unitary, sample_stiefel,
};
use crate::error::{Error, Result};
use crate::exact::{factorial, rational_to_f64, Rational};
use crate::linalg::{adjoint, complex_powi, det, singular_values, CMat};
use crate::montecarlo::{compare, compare_estimates, estimate_mean, quadrature, Domain};
use crate::special::i0;

use super::{
    complex_of, preset_full_matrix, result_from_subs, CheckConfig, CheckResult, SideValue, Sub,
    STREAM_BLOCK_A, STREAM_BLOCK_B, STREAM_BLOCK_C, STREAM_BLOCK_D,
};

fn regime_label(dim: u32, m: u32) -> &'static str {
    if m == dim {
        "m=N"
    } else if dim >= 2 * m {
        "N>=2m"
    } else {
        "N<2m<2N"
    }
}

/// Exponential identity: Haar side versus the regime-appropriate ensemble.
pub fn check_bcft(cfg: &CheckConfig) -> Result<CheckResult> {
    let (dim, m) = (cfg.dim as usize, cfg.cols as usize);
    if m > dim || m == 0 {
        return Err(Error::RegimeViolation(format!(
            "needs 1 <= m <= N, got N={dim} m={m}"
        )));
    }
    let mut cfg = cfg.clone();
    let x = preset_full_matrix(dim, m, cfg.seed, 1, 1.0);
    let y = preset_full_matrix(dim, m, cfg.seed, 2, 1.0);
    cfg.record_preset("X", &x);
    cfg.record_preset("Y", &y);

    let xy = &x * adjoint(&y);
    let xsx = adjoint(&x) * &x;
    let ysy = adjoint(&y) * &y;

    let lhs = estimate_mean(
        |rng| {
            let u = sample_haar_unitary(dim, rng);
            let t = (&xy * &u).diagonal().sum();
            complex_of((2.0 * t.re).exp())
        },
        cfg.n_samples,
        cfg.seed,
        STREAM_BLOCK_A,
        8,
    )?;

    let regime = regime_label(cfg.dim, cfg.cols);
    let rhs_integrand = |q: &CMat| {
        let t = (&xsx * q).diagonal().sum() + (adjoint(q) * &ysy).diagonal().sum();
        t.exp()
    };
    let rhs = match regime {
        "m=N" => estimate_mean(
            |rng| rhs_integrand(&sample_haar_unitary(dim, rng)),
            cfg.n_samples,
            cfg.seed,
            STREAM_BLOCK_B,
            8,
        )?,
        "N>=2m" => estimate_mean(
            |rng| {
                let h = sample_stiefel(dim, m, rng);
                rhs_integrand(&h.view((0, 0), (m, m)).into_owned())
            },
            cfg.n_samples,
            cfg.seed,
            STREAM_BLOCK_B,
            8,
        )?,
        _ => estimate_mean(
            |rng| rhs_integrand(&sample_boundary_truncation(dim, m, rng).expect("regime checked")),
            cfg.n_samples,
            cfg.seed,
            STREAM_BLOCK_B,
            8,
        )?,
    };

    let mut subs = vec![Sub::new(
        format!("group side vs truncation side ({regime})"),
        SideValue::from_estimate(&lhs),
        SideValue::from_estimate(&rhs),
        compare_estimates(&lhs, &rhs, cfg.z_threshold, cfg.stderr_floor),
    )];

    // the group side depends on X, Y only through the singular values of
    // XY*; re-running with a diagonal replacement of the same spectrum
    // must agree
    let d = singular_values(&xy);
    let d = &d[..m.min(d.len())];
    let replaced = estimate_mean(
        |rng| {
            let u = sample_haar_unitary(dim, rng);
            let t: f64 = d.iter().enumerate().map(|(k, &dk)| dk * u[(k, k)].re).sum();
            complex_of((2.0 * t).exp())
        },
        cfg.n_samples,
        cfg.seed,
        STREAM_BLOCK_C,
        8,
    )?;
    subs.push(Sub::new(
        "spectrum-preserving replacement of the couplings",
        SideValue::from_estimate(&replaced),
        SideValue::from_estimate(&lhs),
        compare_estimates(&replaced, &lhs, cfg.z_threshold, cfg.stderr_floor),
    ));

    let mut extra = String::new();
    if m == 1 {
        // deterministic radial oracle: the group side reduces to a 1-D
        // integral of the modified Bessel kernel against the radial
        // density of a single truncated entry
        let dv = (xsx[(0, 0)].re * ysy[(0, 0)].re).sqrt();
        let oracle = if dim == 1 {
            i0(2.0 * dv)
        } else {
            let nn = dim as f64;
            2.0 * (nn - 1.0)
                * quadrature(
                    |r| r * (1.0 - r * r).powf(nn - 2.0) * i0(2.0 * dv * r),
                    Domain::Interval(0.0, 1.0),
                    1e-11,
                )?
        };
        subs.push(Sub::new(
            "group side vs radial quadrature (m=1)",
            SideValue::from_estimate(&lhs),
            SideValue::from_value(oracle),
            compare(&lhs, complex_of(oracle), cfg.z_threshold, cfg.stderr_floor),
        ));
        subs.push(Sub::new(
            "truncation side vs radial quadrature (m=1)",
            SideValue::from_estimate(&rhs),
            SideValue::from_value(oracle),
            compare(&rhs, complex_of(oracle), cfg.z_threshold, cfg.stderr_floor),
        ));
        extra = format!("coupling singular value d={dv:.6}");
    }

    Ok(result_from_subs(&cfg, regime, subs, extra))
}

/// `prod_{j=1}^m (N-j)!/(m-j)!`, the normalization relating the group
/// integral to the weighted U(m) integral.
fn weighted_um_constant(dim: u32, m: u32) -> f64 {
    let mut c = Rational::from_integer(1.into());
    for j in 1..=m as u64 {
        c *= Rational::new(factorial(dim as u64 - j), factorial(m as u64 - j));
    }
    rational_to_f64(&c)
}

/// Alternative form: the Haar group integral, the U(m) integral weighted by
/// `det(VY*X)^{m-N}` (with its spectrum-pinned normalization), and the
/// SU(N) group integral must all agree.
pub fn check_ww_alternative(cfg: &CheckConfig) -> Result<CheckResult> {
    let (dim, m) = (cfg.dim as usize, cfg.cols as usize);
    if m > dim || m == 0 {
        return Err(Error::RegimeViolation(format!(
            "needs 1 <= m <= N, got N={dim} m={m}"
        )));
    }
    let mut cfg = cfg.clone();
    let x = preset_full_matrix(dim, m, cfg.seed, 1, 1.0);
    let y = preset_full_matrix(dim, m, cfg.seed, 2, 1.0);
    cfg.record_preset("X", &x);
    cfg.record_preset("Y", &y);

    let xy = &x * adjoint(&y);
    let xsx = adjoint(&x) * &x;
    let ysy = adjoint(&y) * &y;
    let ysx = adjoint(&y) * &x;
    let det_ysx = det(&ysx);
    if det_ysx.norm() < 1e-10 {
        return Err(Error::BadParameter(
            "Y*X is rank deficient; the weighted U(m) integral is undefined".into(),
        ));
    }

    let e_haar = estimate_mean(
        |rng| {
            let u = sample_haar_unitary(dim, rng);
            let t = (&xy * &u).diagonal().sum();
            complex_of((2.0 * t.re).exp())
        },
        cfg.n_samples,
        cfg.seed,
        STREAM_BLOCK_A,
        8,
    )?;

    // normalization pinned by the character expansion of both sides
    let power = dim as i64 - m as i64;
    let corr = complex_of(weighted_um_constant(cfg.dim, cfg.cols))
        * complex_powi(det_ysx / det(&ysy), power);
    let e_um = estimate_mean(
        |rng| {
            let v = sample_haar_unitary(m, rng);
            let w = complex_powi(det(&(&v * &ysx)), -power);
            let t = (&xsx * adjoint(&v)).diagonal().sum() + (&v * &ysy).diagonal().sum();
            corr * w * t.exp()
        },
        cfg.n_samples,
        cfg.seed,
        STREAM_BLOCK_B,
        8,
    )?;

    let mut subs = vec![Sub::new(
        "group integral vs weighted U(m) integral",
        SideValue::from_estimate(&e_haar),
        SideValue::from_estimate(&e_um),
        compare_estimates(&e_haar, &e_um, cfg.z_threshold, cfg.stderr_floor),
    )];

    if m < dim {
        let e_su = estimate_mean(
            |rng| {
                let u = sample_special_unitary(dim, rng);
                let t = (&xy * &u).diagonal().sum();
                complex_of((2.0 * t.re).exp())
            },
            cfg.n_samples,
            cfg.seed,
            STREAM_BLOCK_C,
            8,
        )?;
        subs.push(Sub::new(
            "group integral vs SU(N) integral",
            SideValue::from_estimate(&e_haar),
            SideValue::from_estimate(&e_su),
            compare_estimates(&e_haar, &e_su, cfg.z_threshold, cfg.stderr_floor),
        ));
        subs.push(Sub::new(
            "weighted U(m) integral vs SU(N) integral",
            SideValue::from_estimate(&e_um),
            SideValue::from_estimate(&e_su),
            compare_estimates(&e_um, &e_su, cfg.z_threshold, cfg.stderr_floor),
        ));
    } else {
        // m=N: the weight is trivial and the identity reduces to the
        // no-truncation exponential identity; cross-check against it
        let e_plain = estimate_mean(
            |rng| {
                let u = sample_haar_unitary(dim, rng);
                let t = (&xsx * &u).diagonal().sum() + (adjoint(&u) * &ysy).diagonal().sum();
                t.exp()
            },
            cfg.n_samples,
            cfg.seed,
            STREAM_BLOCK_D,
            8,
        )?;
        subs.push(Sub::new(
            "m=N reduction to the plain exponential identity",
            SideValue::from_estimate(&e_um),
            SideValue::from_estimate(&e_plain),
            compare_estimates(&e_um, &e_plain, cfg.z_threshold, cfg.stderr_floor),
        ));
    }

    let regime = if m < dim { "m<N" } else { "m=N" };
    Ok(result_from_subs(&cfg, regime, subs, ""))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(name: &str, dim: u32, m: u32, samples: u64) -> CheckConfig {
        CheckConfig::new(name)
            .with_dims(dim, m, m)
            .with_samples(samples)
    }

    #[test]
    fn bcft_regular_regime() {
        let res = check_bcft(&quick("check_bcft", 4, 1, 60_000)).unwrap();
        assert!(res.pass, "{}", res.notes);
        assert_eq!(res.regime, "N>=2m");
    }

    #[test]
    fn bcft_boundary_regime() {
        let res = check_bcft(&quick("check_bcft", 3, 2, 60_000)).unwrap();
        assert!(res.pass, "{}", res.notes);
        assert_eq!(res.regime, "N<2m<2N");
    }

    #[test]
    fn bcft_no_truncation_regime() {
        let res = check_bcft(&quick("check_bcft", 2, 2, 60_000)).unwrap();
        assert!(res.pass, "{}", res.notes);
        assert_eq!(res.regime, "m=N");
    }

    #[test]
    fn bcft_rejects_bad_dims() {
        assert!(check_bcft(&quick("check_bcft", 2, 3, 1000)).is_err());
    }

    #[test]
    fn ww_three_way() {
        let res = check_ww_alternative(&quick("check_ww_alternative", 3, 1, 60_000)).unwrap();
        assert!(res.pass, "{}", res.notes);
    }

    #[test]
    fn ww_m_equals_n() {
        let res = check_ww_alternative(&quick("check_ww_alternative", 2, 2, 60_000)).unwrap();
        assert!(res.pass, "{}", res.notes);
        assert_eq!(res.regime, "m=N");
    }

    #[test]
    fn zero_couplings_give_exact_unity() {
        // with X = Y = 0 both integrands are the constant 1; the estimate
        // is literally exact on both sides
        use crate::linalg::CMat;
        use crate::montecarlo::estimate_mean;
        let zero = CMat::zeros(3, 1);
        let xy = &zero * crate::linalg::adjoint(&zero);
        let lhs = estimate_mean(
            |rng| {
                let u = crate::ensembles::sample_haar_unitary(3, rng);
                let t = (&xy * &u).diagonal().sum();
                super::complex_of((2.0 * t.re).exp())
            },
            1000,
            1,
            0,
            1,
        )
        .unwrap();
        assert_eq!(lhs.mean_re, 1.0);
        assert_eq!(lhs.stderr_re, 0.0);
    }

    #[test]
    fn determinism_bit_exact() {
        let a = check_bcft(&quick("check_bcft", 3, 1, 20_000)).unwrap();
        let b = check_bcft(&quick("check_bcft", 3, 1, 20_000)).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}
