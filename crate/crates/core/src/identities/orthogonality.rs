//! Orthogonality of Schur functions as matrix elements of irreducible
//! representations: conjugation averages over U(m), pairwise products over
//! U(m), and their extension to bi-unitarily invariant truncation laws.

use num_complex::Complex64;

use crate::ensembles::{sample_haar_unitary, sample_stiefel};
use crate::error::{Error, Result};
use crate::exact::rational_to_f64;
use crate::linalg::{adjoint, CMat};
use crate::montecarlo::{compare, estimate_means_multi};
use crate::partitions::Partition;
use crate::symmetric::{power_sums, schur_of_matrix, weyl_dimension, SchurEvaluator};

use super::{
    preset_full_matrix, result_from_subs, CheckConfig, CheckResult, SideValue, Sub,
    STREAM_BLOCK_A, STREAM_BLOCK_B, STREAM_BLOCK_C,
};

fn schur_complex(lambda: &Partition, m: &CMat) -> Complex64 {
    schur_of_matrix(lambda, m).expect("square by construction")
}

/// Partition pairs exercised by default: diagonal and off-diagonal cases
/// up to weight 3.
fn default_pairs() -> Vec<(Partition, Partition)> {
    let p = |v: &[u32]| Partition::new(v).unwrap();
    vec![
        (p(&[1]), p(&[1])),
        (p(&[2]), p(&[2])),
        (p(&[2, 1]), p(&[2, 1])),
        (p(&[1]), p(&[2])),
        (p(&[2]), p(&[1, 1])),
        (p(&[3]), p(&[2, 1])),
    ]
}

pub fn check_orthogonality(cfg: &CheckConfig) -> Result<CheckResult> {
    let (dim, n, m) = (cfg.dim as usize, cfg.rows as usize, cfg.cols as usize);
    if !(1 <= m && m <= n && n <= dim) {
        return Err(Error::RegimeViolation(format!(
            "needs 1 <= m <= n <= N, got N={dim} n={n} m={m}"
        )));
    }
    let pairs: Vec<(Partition, Partition)> = match &cfg.lambda {
        Some(l) => vec![(l.clone(), l.clone())],
        None => default_pairs(),
    };
    let max_weight = pairs
        .iter()
        .map(|(a, b)| a.weight().max(b.weight()))
        .max()
        .unwrap()
        .max(1);

    let mut cfg = cfg.clone();
    let a_mat = preset_full_matrix(m, m, cfg.seed, 1, 1.0);
    let b_mat = preset_full_matrix(m, m, cfg.seed, 2, 1.0);
    let l_mat = preset_full_matrix(m, n, cfg.seed, 3, 1.0);
    let mm_mat = preset_full_matrix(m, n, cfg.seed, 4, 1.0);
    cfg.record_preset("A", &a_mat);
    cfg.record_preset("B", &b_mat);
    cfg.record_preset("L", &l_mat);
    cfg.record_preset("M", &mm_mat);

    let mut subs = Vec::new();

    // conjugation average over U(m): E s_l(A U B U*) = s_l(A)s_l(B)/s_l(1_m)
    let conj_lambdas: Vec<Partition> = {
        let mut v: Vec<Partition> = pairs.iter().map(|(a, _)| a.clone()).collect();
        v.sort();
        v.dedup();
        v.retain(|l| l.length() <= m);
        v
    };
    let conj_ests = estimate_means_multi(
        |rng, out| {
            let u = sample_haar_unitary(m, rng);
            let prod = &a_mat * &u * &b_mat * adjoint(&u);
            let p = power_sums(&prod, 2 * max_weight as usize).expect("square");
            let ev = SchurEvaluator::from_power_sums(&p, m, max_weight).expect("sized");
            for (slot, l) in out.iter_mut().zip(&conj_lambdas) {
                *slot = ev.eval(l);
            }
        },
        conj_lambdas.len(),
        cfg.n_samples,
        cfg.seed,
        STREAM_BLOCK_A,
        8,
    )?;
    for (est, l) in conj_ests.iter().zip(&conj_lambdas) {
        let reference = schur_complex(l, &a_mat) * schur_complex(l, &b_mat)
            / Complex64::new(rational_to_f64(&weyl_dimension(l, m as u32)), 0.0);
        subs.push(Sub::new(
            format!("conjugation average, lambda=({l})"),
            SideValue::from_estimate(est),
            SideValue::from_value(reference.re),
            compare(est, reference, cfg.z_threshold, cfg.stderr_floor),
        ));
    }

    // pairwise products over U(m): E s_l(AU) conj(s_mu(BU)) =
    // delta_{l,mu} s_l(AB*)/s_l(1_m)
    let um_pairs: Vec<(Partition, Partition)> = pairs
        .iter()
        .filter(|(a, b)| a.length() <= m && b.length() <= m)
        .cloned()
        .collect();
    let pair_ests = estimate_means_multi(
        |rng, out| {
            let u = sample_haar_unitary(m, rng);
            let au = &a_mat * &u;
            let bu = &b_mat * &u;
            let pa = power_sums(&au, 2 * max_weight as usize).expect("square");
            let pb = power_sums(&bu, 2 * max_weight as usize).expect("square");
            let ea = SchurEvaluator::from_power_sums(&pa, m, max_weight).expect("sized");
            let eb = SchurEvaluator::from_power_sums(&pb, m, max_weight).expect("sized");
            for (slot, (l, mu)) in out.iter_mut().zip(&um_pairs) {
                *slot = ea.eval(l) * eb.eval(mu).conj();
            }
        },
        um_pairs.len(),
        cfg.n_samples,
        cfg.seed,
        STREAM_BLOCK_B,
        8,
    )?;
    for (est, (l, mu)) in pair_ests.iter().zip(&um_pairs) {
        let reference = if l == mu {
            schur_complex(l, &(&a_mat * adjoint(&b_mat)))
                / Complex64::new(rational_to_f64(&weyl_dimension(l, m as u32)), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
        subs.push(Sub::new(
            format!("group orthogonality, lambda=({l}) mu=({mu})"),
            SideValue::from_estimate(est),
            SideValue::from_value(reference.re),
            compare(est, reference, cfg.z_threshold, cfg.stderr_floor),
        ));
    }

    // truncation orthogonality: E s_l(LQ) conj(s_mu(MQ)) =
    // delta_{l,mu} s_l(M*L)/s_l(1_N) over the n x m block law
    let tr_pairs = um_pairs;
    let tr_ests = estimate_means_multi(
        |rng, out| {
            let q = sample_stiefel(dim, m, rng).view((0, 0), (n, m)).into_owned();
            let lq = &l_mat * &q;
            let mq = &mm_mat * &q;
            let pl = power_sums(&lq, 2 * max_weight as usize).expect("square");
            let pm = power_sums(&mq, 2 * max_weight as usize).expect("square");
            let el = SchurEvaluator::from_power_sums(&pl, m, max_weight).expect("sized");
            let em = SchurEvaluator::from_power_sums(&pm, m, max_weight).expect("sized");
            for (slot, (l, mu)) in out.iter_mut().zip(&tr_pairs) {
                *slot = el.eval(l) * em.eval(mu).conj();
            }
        },
        tr_pairs.len(),
        cfg.n_samples,
        cfg.seed,
        STREAM_BLOCK_C,
        8,
    )?;
    for (est, (l, mu)) in tr_ests.iter().zip(&tr_pairs) {
        let reference = if l == mu {
            schur_complex(l, &(adjoint(&mm_mat) * &l_mat))
                / Complex64::new(rational_to_f64(&weyl_dimension(l, cfg.dim)), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
        subs.push(Sub::new(
            format!("truncation orthogonality, lambda=({l}) mu=({mu})"),
            SideValue::from_estimate(est),
            SideValue::from_value(reference.re),
            compare(est, reference, cfg.z_threshold, cfg.stderr_floor),
        ));
    }

    Ok(result_from_subs(&cfg, "U(m) averages and n x m truncations", subs, ""))
}
