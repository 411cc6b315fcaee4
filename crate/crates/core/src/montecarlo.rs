//! Estimation engine: seeded Monte Carlo means with standard errors,
//! statistical comparisons, and deterministic adaptive quadrature.
//!
//! Sampling is split over a fixed grid of 64 logical streams regardless of
//! how much hardware parallelism is used, and the merge folds streams in
//! index order, so an estimate is bit-identical for any `shards` setting.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ensembles::SeededRng;
use crate::error::{Error, Result};

/// Logical sub-streams per estimate; fixed so results cannot depend on the
/// degree of parallelism.
const LOGICAL_STREAMS: u64 = 64;

/// Mean, componentwise standard errors, sample count, and seed of a Monte
/// Carlo average.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean_re: f64,
    pub mean_im: f64,
    pub stderr_re: f64,
    pub stderr_im: f64,
    pub n_samples: u64,
    pub seed: u64,
}

impl Estimate {
    pub fn mean(&self) -> Complex64 {
        Complex64::new(self.mean_re, self.mean_im)
    }

    /// Scalar summary used in reports: the larger componentwise error.
    pub fn stderr(&self) -> f64 {
        self.stderr_re.max(self.stderr_im)
    }
}

/// Outcome of comparing an estimate against a reference value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub z: f64,
    pub pass: bool,
    pub z_threshold: f64,
    pub stderr_floor: f64,
}

pub const DEFAULT_Z_THRESHOLD: f64 = 4.0;
pub const DEFAULT_STDERR_FLOOR: f64 = 1e-12;

/// z-score of `est` against an exact reference: the max of the real and
/// imaginary component scores, each floored in the denominator.
pub fn compare(
    est: &Estimate,
    reference: Complex64,
    z_threshold: f64,
    stderr_floor: f64,
) -> Comparison {
    let z_re = (est.mean_re - reference.re).abs() / est.stderr_re.max(stderr_floor);
    let z_im = (est.mean_im - reference.im).abs() / est.stderr_im.max(stderr_floor);
    let z = z_re.max(z_im);
    Comparison {
        z,
        pass: z <= z_threshold,
        z_threshold,
        stderr_floor,
    }
}

/// Mutual z-score of two independent estimates (componentwise errors add in
/// quadrature).
pub fn compare_estimates(
    lhs: &Estimate,
    rhs: &Estimate,
    z_threshold: f64,
    stderr_floor: f64,
) -> Comparison {
    let se_re = (lhs.stderr_re.hypot(rhs.stderr_re)).max(stderr_floor);
    let se_im = (lhs.stderr_im.hypot(rhs.stderr_im)).max(stderr_floor);
    let z_re = (lhs.mean_re - rhs.mean_re).abs() / se_re;
    let z_im = (lhs.mean_im - rhs.mean_im).abs() / se_im;
    let z = z_re.max(z_im);
    Comparison {
        z,
        pass: z <= z_threshold,
        z_threshold,
        stderr_floor,
    }
}

struct ChunkAccum {
    sum: Complex64,
    sum_sq_re: f64,
    sum_sq_im: f64,
    first_bad: Option<u64>,
}

fn chunk_bounds(n_samples: u64, chunk: u64) -> (u64, u64) {
    let base = n_samples / LOGICAL_STREAMS;
    let extra = n_samples % LOGICAL_STREAMS;
    let count = base + u64::from(chunk < extra);
    let start = chunk * base + chunk.min(extra);
    (start, count)
}

/// Monte Carlo mean of a vector-valued integrand over `n_samples` draws.
///
/// `f` receives an rng handle and writes one value per component into the
/// output slice; components share every draw. `stream_base` offsets the
/// logical stream indices so independent estimates never reuse a stream.
pub fn estimate_means_multi<F>(
    f: F,
    dim: usize,
    n_samples: u64,
    seed: u64,
    stream_base: u64,
    shards: usize,
) -> Result<Vec<Estimate>>
where
    F: Fn(&mut SeededRng, &mut [Complex64]) + Sync,
{
    if n_samples < 100 {
        return Err(Error::BadParameter(format!(
            "estimates need at least 100 samples, got {n_samples}"
        )));
    }
    let run_chunk = |chunk: u64| -> Vec<ChunkAccum> {
        let (start, count) = chunk_bounds(n_samples, chunk);
        let mut rng = SeededRng::new(seed, stream_base + 1 + chunk);
        let mut acc: Vec<ChunkAccum> = (0..dim)
            .map(|_| ChunkAccum {
                sum: Complex64::new(0.0, 0.0),
                sum_sq_re: 0.0,
                sum_sq_im: 0.0,
                first_bad: None,
            })
            .collect();
        let mut buf = vec![Complex64::new(0.0, 0.0); dim];
        for i in 0..count {
            f(&mut rng, &mut buf);
            for (a, v) in acc.iter_mut().zip(&buf) {
                if !v.re.is_finite() || !v.im.is_finite() {
                    if a.first_bad.is_none() {
                        a.first_bad = Some(start + i);
                    }
                    continue;
                }
                a.sum += v;
                a.sum_sq_re += v.re * v.re;
                a.sum_sq_im += v.im * v.im;
            }
        }
        acc
    };

    let per_chunk: Vec<Vec<ChunkAccum>> = if shards <= 1 {
        (0..LOGICAL_STREAMS).map(run_chunk).collect()
    } else {
        (0..LOGICAL_STREAMS)
            .into_par_iter()
            .map(run_chunk)
            .collect()
    };

    let mut out = Vec::with_capacity(dim);
    for d in 0..dim {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut sq_re = 0.0;
        let mut sq_im = 0.0;
        let mut bad: Option<u64> = None;
        for chunk in &per_chunk {
            let a = &chunk[d];
            sum += a.sum;
            sq_re += a.sum_sq_re;
            sq_im += a.sum_sq_im;
            bad = match (bad, a.first_bad) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            };
        }
        if let Some(index) = bad {
            return Err(Error::NonFiniteIntegrand { index });
        }
        let n = n_samples as f64;
        let mean = sum / n;
        let var_re = ((sq_re - n * mean.re * mean.re) / (n - 1.0).max(1.0)).max(0.0);
        let var_im = ((sq_im - n * mean.im * mean.im) / (n - 1.0).max(1.0)).max(0.0);
        out.push(Estimate {
            mean_re: mean.re,
            mean_im: mean.im,
            stderr_re: (var_re / n).sqrt(),
            stderr_im: (var_im / n).sqrt(),
            n_samples,
            seed,
        });
    }
    Ok(out)
}

/// Monte Carlo mean of a complex integrand; see [`estimate_means_multi`].
pub fn estimate_mean<F>(
    f: F,
    n_samples: u64,
    seed: u64,
    stream_base: u64,
    shards: usize,
) -> Result<Estimate>
where
    F: Fn(&mut SeededRng) -> Complex64 + Sync,
{
    let v = estimate_means_multi(
        |rng, out| out[0] = f(rng),
        1,
        n_samples,
        seed,
        stream_base,
        shards,
    )?;
    Ok(v[0])
}

// Gauss-Legendre node/weight pairs, frozen at full printed precision.
const GL7_NODES: [f64; 7] = [
    -0.9491079123427585,
    -0.7415311855993945,
    -0.4058451513773972,
    0.0,
    0.4058451513773972,
    0.7415311855993945,
    0.9491079123427585,
];
const GL7_WEIGHTS: [f64; 7] = [
    0.12948496616887065,
    0.2797053914892766,
    0.3818300505051183,
    0.41795918367346896,
    0.3818300505051183,
    0.2797053914892766,
    0.12948496616887065,
];
const GL15_NODES: [f64; 15] = [
    -0.9879925180204854,
    -0.937273392400706,
    -0.8482065834104272,
    -0.7244177313601701,
    -0.5709721726085388,
    -0.3941513470775634,
    -0.20119409399743451,
    0.0,
    0.20119409399743451,
    0.3941513470775634,
    0.5709721726085388,
    0.7244177313601701,
    0.8482065834104272,
    0.937273392400706,
    0.9879925180204854,
];
const GL15_WEIGHTS: [f64; 15] = [
    0.030753241996118647,
    0.07036604748810807,
    0.10715922046717177,
    0.1395706779261539,
    0.16626920581699378,
    0.18616100001556188,
    0.19843148532711125,
    0.2025782419255609,
    0.19843148532711125,
    0.18616100001556188,
    0.16626920581699378,
    0.1395706779261539,
    0.10715922046717177,
    0.07036604748810807,
    0.030753241996118647,
];

fn gauss<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, nodes: &[f64], weights: &[f64]) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut s = 0.0;
    for (x, w) in nodes.iter().zip(weights) {
        s += w * f(c + h * x);
    }
    s * h
}

/// Integration domain for [`quadrature`].
#[derive(Debug, Clone, Copy)]
pub enum Domain {
    /// Finite interval `[a, b]`.
    Interval(f64, f64),
    /// `[a, infinity)`, mapped by `x = a + y/(1-y)`; the integrand must
    /// decay algebraically at least as fast as `x^{-2}`.
    HalfLine(f64),
}

const MAX_DEPTH: u32 = 48;
const MAX_INTERVALS: u32 = 200_000;

/// Deterministic adaptive quadrature to absolute tolerance `abs_tol`,
/// embedded 7/15-point Gauss rules with interval bisection. Subdivision is
/// bounded both in depth and in total interval count; exhausting either
/// budget reports the achieved tolerance instead of silently accepting.
pub fn quadrature<F: Fn(f64) -> f64>(f: F, domain: Domain, abs_tol: f64) -> Result<f64> {
    match domain {
        Domain::Interval(a, b) => adaptive(&f, a, b, abs_tol),
        Domain::HalfLine(a) => {
            let g = |y: f64| {
                let t = 1.0 - y;
                f(a + y / t) / (t * t)
            };
            // the mapped integrand is finite on [0,1) and tends to 0 at 1
            // for algebraic decay; stop shy of the endpoint
            adaptive(&g, 0.0, 1.0 - 1e-14, abs_tol)
        }
    }
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, abs_tol: f64) -> Result<f64> {
    fn rec<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        tol: f64,
        depth: u32,
        err_acc: &mut f64,
        budget: &mut u32,
    ) -> f64 {
        let coarse = gauss(f, a, b, &GL7_NODES, &GL7_WEIGHTS);
        let fine = gauss(f, a, b, &GL15_NODES, &GL15_WEIGHTS);
        let err = (fine - coarse).abs();
        if err <= tol || depth >= MAX_DEPTH || *budget == 0 {
            *err_acc += err;
            return fine;
        }
        *budget -= 1;
        let mid = 0.5 * (a + b);
        rec(f, a, mid, 0.5 * tol, depth + 1, err_acc, budget)
            + rec(f, mid, b, 0.5 * tol, depth + 1, err_acc, budget)
    }
    let mut err_acc = 0.0;
    let mut budget = MAX_INTERVALS;
    let v = rec(f, a, b, abs_tol, 0, &mut err_acc, &mut budget);
    if !v.is_finite() {
        return Err(Error::QuadratureNonConvergence {
            achieved: f64::INFINITY,
            requested: abs_tol,
        });
    }
    if err_acc > abs_tol * 4.0 {
        return Err(Error::QuadratureNonConvergence {
            achieved: err_acc,
            requested: abs_tol,
        });
    }
    Ok(v)
}

/// Iterated 2-D quadrature over a rectangle: adaptive in the outer variable
/// with an adaptive inner integral per outer node.
pub fn quadrature_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    x_range: (f64, f64),
    y_domain: Domain,
    abs_tol: f64,
) -> Result<f64> {
    let inner_tol = abs_tol / (10.0 * (x_range.1 - x_range.0).abs().max(1.0));
    let outer = |x: f64| {
        quadrature(|y| f(x, y), y_domain, inner_tol).unwrap_or(f64::NAN)
    };
    adaptive(&outer, x_range.0, x_range.1, abs_tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::sample_haar_unitary;
    use crate::special::j0;

    #[test]
    fn constant_integrand() {
        let est = estimate_mean(
            |_| Complex64::new(2.5, -1.0),
            1000,
            1,
            0,
            1,
        )
        .unwrap();
        assert_eq!(est.mean_re, 2.5);
        assert_eq!(est.mean_im, -1.0);
        assert!(est.stderr_re < 1e-13 && est.stderr_im < 1e-13);
    }

    #[test]
    fn haar_entry_moment() {
        let est = estimate_mean(
            |rng| {
                let u = sample_haar_unitary(4, rng);
                Complex64::new(u[(0, 0)].norm_sqr(), 0.0)
            },
            100_000,
            7,
            0,
            4,
        )
        .unwrap();
        let cmp = compare(
            &est,
            Complex64::new(0.25, 0.0),
            DEFAULT_Z_THRESHOLD,
            DEFAULT_STDERR_FLOOR,
        );
        assert!(cmp.pass, "z = {}", cmp.z);
    }

    #[test]
    fn shard_invariance() {
        let f = |rng: &mut SeededRng| {
            let u = sample_haar_unitary(3, rng);
            Complex64::new(u[(0, 0)].norm_sqr(), u[(1, 0)].re)
        };
        let a = estimate_mean(f, 12_345, 99, 0, 1).unwrap();
        let b = estimate_mean(f, 12_345, 99, 0, 8).unwrap();
        assert_eq!(a, b);
        let c = estimate_mean(f, 12_345, 100, 0, 1).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn stderr_scales_like_sqrt_n() {
        let f = |rng: &mut SeededRng| {
            let u = sample_haar_unitary(4, rng);
            Complex64::new(u[(0, 0)].norm_sqr(), 0.0)
        };
        let e3 = estimate_mean(f, 1_000, 5, 0, 1).unwrap();
        let e4 = estimate_mean(f, 10_000, 5, 64, 1).unwrap();
        let e5 = estimate_mean(f, 100_000, 5, 128, 1).unwrap();
        let r34 = e3.stderr_re / e4.stderr_re;
        let r45 = e4.stderr_re / e5.stderr_re;
        let root10 = 10.0f64.sqrt();
        assert!((r34 / root10 - 1.0).abs() < 0.2, "ratio {r34}");
        assert!((r45 / root10 - 1.0).abs() < 0.2, "ratio {r45}");
    }

    #[test]
    fn nonfinite_integrand_aborts_with_index() {
        let f = |rng: &mut SeededRng| {
            let x = rng.uniform();
            if x > 0.9999 {
                Complex64::new(f64::INFINITY, 0.0)
            } else {
                Complex64::new(1.0, 0.0)
            }
        };
        match estimate_mean(f, 200_000, 3, 0, 1) {
            Err(Error::NonFiniteIntegrand { .. }) => {}
            other => panic!("expected non-finite abort, got {other:?}"),
        }
    }

    #[test]
    fn compare_arithmetic() {
        let est = Estimate {
            mean_re: 1.0,
            mean_im: 0.0,
            stderr_re: 0.1,
            stderr_im: 0.0,
            n_samples: 100,
            seed: 0,
        };
        let c = compare(&est, Complex64::new(1.2, 0.0), 4.0, 1e-12);
        assert!((c.z - 2.0).abs() < 1e-12 && c.pass);

        let est2 = Estimate {
            stderr_re: 0.01,
            ..est
        };
        let c = compare(&est2, Complex64::new(1.2, 0.0), 4.0, 1e-12);
        assert!((c.z - 20.0).abs() < 1e-9 && !c.pass);

        let exact = Estimate {
            mean_re: 1.2,
            mean_im: 0.0,
            stderr_re: 0.0,
            stderr_im: 0.0,
            n_samples: 100,
            seed: 0,
        };
        let c = compare(&exact, Complex64::new(1.2, 0.0), 4.0, 1e-12);
        assert_eq!(c.z, 0.0);
        assert!(c.pass);
    }

    #[test]
    fn quadrature_examples() {
        let v = quadrature(|x| 1.0 - x, Domain::Interval(0.0, 1.0), 1e-12).unwrap();
        assert!((v - 0.5).abs() < 1e-12);

        let v = quadrature(
            |x| (1.0 + x).powi(-4),
            Domain::HalfLine(0.0),
            1e-10,
        )
        .unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-10, "{v}");

        // against a frozen series evaluation of the same integral
        let v = quadrature(|q| j0(2.0 * q) * 2.0 * q, Domain::Interval(0.0, 1.0), 1e-12).unwrap();
        assert!((v - 0.57672480775687339).abs() < 1e-10, "{v}");
    }

    #[test]
    fn quadrature_2d_rectangle() {
        let v = quadrature_2d(
            |x, y| x * y * y,
            (0.0, 1.0),
            Domain::Interval(0.0, 2.0),
            1e-10,
        )
        .unwrap();
        assert!((v - 0.5 * 8.0 / 3.0).abs() < 1e-9, "{v}");
    }

    #[test]
    fn divergent_integrand_errors_out() {
        // log-divergent at infinity: the subdivision budget must trip and
        // report non-convergence instead of looping
        let r = quadrature(
            |x| x * x * x * (1.0 + x).powi(-4),
            Domain::HalfLine(0.0),
            1e-10,
        );
        match r {
            Err(Error::QuadratureNonConvergence { .. }) => {}
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn quadrature_self_consistency() {
        // halving the tolerance changes the result by less than the
        // requested tolerance
        let f = |x: f64| (10.0 * x).sin() * (-x).exp();
        let v1 = quadrature(f, Domain::Interval(0.0, 3.0), 1e-8).unwrap();
        let v2 = quadrature(f, Domain::Interval(0.0, 3.0), 1e-12).unwrap();
        assert!((v1 - v2).abs() < 1e-8);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn quadrature_matches_antiderivative(
                c0 in -2.0f64..2.0, c1 in -2.0f64..2.0,
                c2 in -2.0f64..2.0, c3 in -2.0f64..2.0,
                b in 0.1f64..3.0,
            ) {
                let f = |x: f64| c0 + c1 * x + c2 * x * x + c3 * x * x * x;
                let exact = c0 * b + c1 * b * b / 2.0 + c2 * b.powi(3) / 3.0
                    + c3 * b.powi(4) / 4.0;
                let v = quadrature(f, Domain::Interval(0.0, b), 1e-12).unwrap();
                prop_assert!((v - exact).abs() < 1e-10, "{} vs {}", v, exact);
            }
        }
    }
}
