//! Samplers for the matrix measures the identities integrate over: Haar
//! unitary, special unitary, truncations in every parameter regime, Jacobi
//! radial laws, the heavy-tailed bi-unitarily invariant law on rectangular
//! complex matrices, and the boundary-supported truncation parametrization.
//!
//! All randomness flows through [`SeededRng`], a counter-based ChaCha
//! stream: identical `(seed, stream)` reproduces identical draws on every
//! platform. One handle is single-owner; parallel estimation hands each
//! logical shard its own stream index.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{adjoint, hermitian_eigenvalues, CMat};

/// Eigenvalues of `Q*Q` for an ensemble draw, ascending.
pub type RadialSample = Vec<f64>;

/// Counter-based seeded generator; `(seed, stream)` fully determines the
/// draw sequence.
pub struct SeededRng {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        SeededRng { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    /// Standard complex Gaussian entry: real and imaginary parts each of
    /// variance 1/2 (`E|z|^2 = 1`). Box-Muller on two uniforms, kept
    /// in-house so streams stay value-stable.
    pub fn complex_gaussian(&mut self) -> Complex64 {
        let u1: f64 = self.rng.gen::<f64>();
        let u2: f64 = self.rng.gen::<f64>();
        let r = (-(1.0 - u1).ln()).sqrt();
        let th = 2.0 * std::f64::consts::PI * u2;
        Complex64::new(r * th.cos(), r * th.sin())
    }
}

/// Dense matrix of i.i.d. standard complex Gaussian entries.
pub fn sample_ginibre(rows: usize, cols: usize, rng: &mut SeededRng) -> CMat {
    CMat::from_fn(rows, cols, |_, _| rng.complex_gaussian())
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the R-diagonal
/// phase correction, so the law is exactly Haar rather than QR-convention
/// dependent.
pub fn sample_haar_unitary(n: usize, rng: &mut SeededRng) -> CMat {
    let g = sample_ginibre(n, n, rng);
    let qr = g.qr();
    let r = qr.r();
    let phases = DVector::from_fn(n, |i, _| {
        let d = r[(i, i)];
        let m = d.norm();
        if m > 0.0 {
            d / m
        } else {
            Complex64::new(1.0, 0.0)
        }
    });
    let mut q = qr.q();
    for j in 0..n {
        let ph = phases[j];
        for i in 0..n {
            q[(i, j)] *= ph;
        }
    }
    q
}

/// Haar-invariant Stiefel frame: the first `m` columns of a Haar unitary
/// of size `dim`, drawn directly as the thin QR factor of a `dim x m`
/// Ginibre matrix with the same phase fix. Costs O(dim m^2) instead of
/// O(dim^3).
pub fn sample_stiefel(dim: usize, m: usize, rng: &mut SeededRng) -> CMat {
    assert!(m <= dim, "frame cannot be wider than the space");
    let g = sample_ginibre(dim, m, rng);
    let qr = g.qr();
    let r = qr.r();
    let phases = DVector::from_fn(m, |i, _| {
        let d = r[(i, i)];
        let norm = d.norm();
        if norm > 0.0 {
            d / norm
        } else {
            Complex64::new(1.0, 0.0)
        }
    });
    let mut q = qr.q();
    for j in 0..m {
        let ph = phases[j];
        for i in 0..dim {
            q[(i, j)] *= ph;
        }
    }
    q
}

/// Haar draw on SU(n): Haar U(n) divided by the principal n-th root of its
/// determinant.
pub fn sample_special_unitary(n: usize, rng: &mut SeededRng) -> CMat {
    let u = sample_haar_unitary(n, rng);
    let det = crate::linalg::det(&u);
    // det lies on the unit circle; principal n-th root
    let root = Complex64::from_polar(1.0, det.arg() / n as f64);
    u / root
}

/// Principal (top-left) `n x m` sub-block.
pub fn truncate_block(u: &CMat, n: usize, m: usize) -> Result<CMat> {
    if n > u.nrows() || m > u.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "cannot take {n}x{m} block of a {}x{} matrix",
            u.nrows(),
            u.ncols()
        )));
    }
    Ok(u.view((0, 0), (n, m)).into_owned())
}

/// Eigenvalues of `Q*Q` where `Q` is the `n x m` truncation of a Haar
/// unitary of size `dim`. For `dim < n + m` exactly `m + n - dim` of the
/// returned values sit at 1 (rank constraint of the co-block).
///
/// Drawn through the Stiefel frame of the first `m` columns, which carries
/// the same law as truncating a full Haar matrix.
pub fn sample_truncation_radial(
    dim: usize,
    n: usize,
    m: usize,
    rng: &mut SeededRng,
) -> Result<RadialSample> {
    if !(m <= n && n <= dim) {
        return Err(Error::RegimeViolation(format!(
            "truncation radial law needs m <= n <= N, got N={dim} n={n} m={m}"
        )));
    }
    let h = sample_stiefel(dim, m, rng);
    let q = h.view((0, 0), (n, m));
    Ok(hermitian_eigenvalues(&(q.adjoint() * q)))
}

/// Jacobi radial law with weight `prod x^a (1-x)^b` times the squared
/// Vandermonde, realized as the truncation radial law at
/// `N = a + b + 2m, n = a + m` (integer parameters only, zero sampling
/// bias).
pub fn sample_jacobi_radial(
    a: usize,
    b: usize,
    m: usize,
    rng: &mut SeededRng,
) -> Result<RadialSample> {
    sample_truncation_radial(a + b + 2 * m, a + m, m, rng)
}

/// Draw from the unit-mass measure `const det(I + Q*Q)^{-(N+m+n)}` on
/// complex `n x m` matrices.
///
/// Synthesized from invariance: `Q = H sqrt(X) V*` with `H` a Haar Stiefel
/// frame (first `m` columns of Haar U(n)), `V` Haar on U(m), and radial
/// values `x = y/(1-y)` with `y` Jacobi-distributed with weights
/// `y^{n-m} (1-y)^N`. The substitution maps the Jacobi weight onto the
/// target radial density exactly.
pub fn sample_fermionic_matrix(
    dim: usize,
    n: usize,
    m: usize,
    rng: &mut SeededRng,
) -> Result<CMat> {
    if m > n {
        return Err(Error::RegimeViolation(format!(
            "fermionic sampler needs m <= n, got n={n} m={m}"
        )));
    }
    let y = sample_jacobi_radial(n - m, dim, m, rng)?;
    let h = sample_stiefel(n, m, rng);
    let v = sample_haar_unitary(m, rng);
    // H sqrt(X) V*
    let sqrt_x = CMat::from_fn(m, m, |i, j| {
        if i == j {
            Complex64::new((y[i] / (1.0 - y[i])).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok(h * sqrt_x * adjoint(&v))
}

/// Boundary-regime truncation draw for `N < 2m < 2N`:
/// `Q = U diag(Z, I_{2m-N}) V*` with `U, V` Haar on U(m) and `Z` the
/// principal `(N-m) x (N-m)` truncation of a Haar unitary of size `N`
/// (its density is exactly `det(I - Z*Z)^{2m-N}`). Every sample satisfies
/// `rank(I_m - Q*Q) = N - m`.
pub fn sample_boundary_truncation(dim: usize, m: usize, rng: &mut SeededRng) -> Result<CMat> {
    if !(dim < 2 * m && m < dim) {
        return Err(Error::RegimeViolation(format!(
            "boundary truncation needs N < 2m < 2N, got N={dim} m={m}"
        )));
    }
    let k = dim - m;
    let z = sample_stiefel(dim, k, rng).view((0, 0), (k, k)).into_owned();
    let u = sample_haar_unitary(m, rng);
    let v = sample_haar_unitary(m, rng);
    let mut core = CMat::identity(m, m);
    core.view_mut((0, 0), (k, k)).copy_from(&z);
    Ok(u * core * adjoint(&v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unitarity_residual;

    fn mean_and_se(vals: &[f64]) -> (f64, f64) {
        let n = vals.len() as f64;
        let m = vals.iter().sum::<f64>() / n;
        let var = vals.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (n - 1.0);
        (m, (var / n).sqrt())
    }

    #[test]
    fn ginibre_moments_and_determinism() {
        let n = 100_000;
        let mut rng = SeededRng::new(7, 0);
        let mut re = Vec::with_capacity(n);
        let mut sq = Vec::with_capacity(n);
        for _ in 0..n {
            let z = rng.complex_gaussian();
            re.push(z.re);
            sq.push(z.norm_sqr());
        }
        let (m, se) = mean_and_se(&re);
        assert!(m.abs() < 4.0 * se, "mean {m} se {se}");
        let (m2, se2) = mean_and_se(&sq);
        assert!((m2 - 1.0).abs() < 4.0 * se2, "E|z|^2 {m2} se {se2}");

        let a = sample_ginibre(3, 2, &mut SeededRng::new(42, 5));
        let b = sample_ginibre(3, 2, &mut SeededRng::new(42, 5));
        assert_eq!(a, b);
        let c = sample_ginibre(3, 2, &mut SeededRng::new(42, 6));
        assert_ne!(a, c);
    }

    #[test]
    fn haar_is_unitary_and_balanced() {
        let mut rng = SeededRng::new(11, 0);
        for &n in &[1usize, 2, 5, 16, 64] {
            let u = sample_haar_unitary(n, &mut rng);
            assert!(
                unitarity_residual(&u) <= 1e-12,
                "residual {} at n={n}",
                unitarity_residual(&u)
            );
        }
        // E[Tr U] ~ 0 and E|U_11|^2 = 1/N at N=4
        let n_samples = 100_000;
        let mut tr = Vec::with_capacity(n_samples);
        let mut e11 = Vec::with_capacity(n_samples);
        for _ in 0..n_samples {
            let u = sample_haar_unitary(4, &mut rng);
            tr.push(u.diagonal().sum().re);
            e11.push(u[(0, 0)].norm_sqr());
        }
        let (m, se) = mean_and_se(&tr);
        assert!(m.abs() < 4.0 * se, "E Tr U = {m} +- {se}");
        let (m, se) = mean_and_se(&e11);
        assert!((m - 0.25).abs() < 4.0 * se, "E|U11|^2 = {m} +- {se}");
    }

    #[test]
    fn haar_fourth_moment() {
        // E|U_11|^4 = 2/(N(N+1)); N=3 gives 1/6
        let mut rng = SeededRng::new(3, 1);
        let n_samples = 200_000;
        let mut v = Vec::with_capacity(n_samples);
        for _ in 0..n_samples {
            let u = sample_haar_unitary(3, &mut rng);
            let x = u[(0, 0)].norm_sqr();
            v.push(x * x);
        }
        let (m, se) = mean_and_se(&v);
        assert!(
            (m - 1.0 / 6.0).abs() < 4.0 * se,
            "E|U11|^4 = {m} +- {se} vs 1/6"
        );
    }

    #[test]
    fn special_unitary_properties() {
        let mut rng = SeededRng::new(5, 0);
        for &n in &[1usize, 2, 4] {
            let u = sample_special_unitary(n, &mut rng);
            let d = crate::linalg::det(&u);
            assert!(
                (d - Complex64::new(1.0, 0.0)).norm() < 1e-12,
                "det = {d} at n={n}"
            );
        }
        let u1 = sample_special_unitary(1, &mut rng);
        assert!((u1[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-12);

        let n_samples = 100_000;
        let mut v = Vec::with_capacity(n_samples);
        for _ in 0..n_samples {
            let u = sample_special_unitary(3, &mut rng);
            v.push(u[(0, 0)].norm_sqr());
        }
        let (m, se) = mean_and_se(&v);
        assert!(
            (m - 1.0 / 3.0).abs() < 4.0 * se,
            "SU(3) E|U11|^2 = {m} +- {se}"
        );
    }

    #[test]
    fn truncate_block_basics() {
        let id = CMat::identity(4, 4);
        let b = truncate_block(&id, 2, 2).unwrap();
        assert_eq!(b, CMat::identity(2, 2));
        assert!(truncate_block(&id, 5, 1).is_err());

        let mut rng = SeededRng::new(9, 0);
        let u = sample_haar_unitary(4, &mut rng);
        assert_eq!(truncate_block(&u, 4, 4).unwrap(), u);
        // spectrum of Q*Q within [0,1]
        let q = truncate_block(&u, 3, 2).unwrap();
        for x in hermitian_eigenvalues(&(adjoint(&q) * &q)) {
            assert!((-1e-12..=1.0 + 1e-12).contains(&x));
        }
    }

    #[test]
    fn truncation_radial_regimes() {
        let mut rng = SeededRng::new(17, 0);
        // N=4, n=2, m=1: E[x] = s_(1)(1_1) s_(1)(1_2) / s_(1)(1_4) = 2/4
        let n_samples = 100_000;
        let mut v = Vec::with_capacity(n_samples);
        for _ in 0..n_samples {
            v.push(sample_truncation_radial(4, 2, 1, &mut rng).unwrap()[0]);
        }
        let (m, se) = mean_and_se(&v);
        assert!((m - 0.5).abs() < 4.0 * se, "E x = {m} +- {se}");

        // N=3, n=2, m=2: exactly one eigenvalue pinned at 1
        for _ in 0..200 {
            let x = sample_truncation_radial(3, 2, 2, &mut rng).unwrap();
            assert_eq!(x.len(), 2);
            assert!((x[1] - 1.0).abs() <= 1e-10, "pinned value {x:?}");
            assert!(x[0] < 1.0 - 1e-6);
        }

        // N=2, n=m=1: value is |U_11|^2, mean 1/2
        let mut v = Vec::with_capacity(n_samples);
        for _ in 0..n_samples {
            v.push(sample_truncation_radial(2, 1, 1, &mut rng).unwrap()[0]);
        }
        let (m, se) = mean_and_se(&v);
        assert!((m - 0.5).abs() < 4.0 * se);

        assert!(sample_truncation_radial(2, 1, 2, &mut rng).is_err());
    }

    #[test]
    fn jacobi_radial_beta_moments() {
        let mut rng = SeededRng::new(23, 0);
        let n_samples = 100_000;
        // a=0, b=1, m=1: density 2(1-x), E[x] = 1/3
        let mut v = Vec::with_capacity(n_samples);
        for _ in 0..n_samples {
            v.push(sample_jacobi_radial(0, 1, 1, &mut rng).unwrap()[0]);
        }
        let (m, se) = mean_and_se(&v);
        assert!((m - 1.0 / 3.0).abs() < 4.0 * se, "E x = {m} +- {se}");

        // a=1, b=0, m=1: E[x] = 2/3
        let mut v = Vec::with_capacity(n_samples);
        for _ in 0..n_samples {
            v.push(sample_jacobi_radial(1, 0, 1, &mut rng).unwrap()[0]);
        }
        let (m, se) = mean_and_se(&v);
        assert!((m - 2.0 / 3.0).abs() < 4.0 * se, "E x = {m} +- {se}");

        // m=2, a=b=0: E[x_1 + x_2] = s_(1)(1_2)^2 / s_(1)(1_4) = 1
        let mut v = Vec::with_capacity(n_samples);
        for _ in 0..n_samples {
            let x = sample_jacobi_radial(0, 0, 2, &mut rng).unwrap();
            v.push(x[0] + x[1]);
        }
        let (m, se) = mean_and_se(&v);
        assert!((m - 1.0).abs() < 4.0 * se, "E s_1 = {m} +- {se}");
    }

    #[test]
    fn fermionic_matrix_law() {
        let mut rng = SeededRng::new(29, 0);
        let n_samples = 100_000;
        // m=n=1: E[x] = 1/N (density ~ (1+x)^{-N-2}); N=4
        let mut v = Vec::with_capacity(n_samples);
        for _ in 0..n_samples {
            let q = sample_fermionic_matrix(4, 1, 1, &mut rng).unwrap();
            v.push(q[(0, 0)].norm_sqr());
        }
        let (m, se) = mean_and_se(&v);
        assert!((m - 0.25).abs() < 4.0 * se, "E x = {m} +- {se}");

        // m=n=1, N=2: E[s_(1)(Q*Q)] = s_(1)(1_1)^2 / s_(1,1)(1_2) = 1/2
        let mut v = Vec::with_capacity(n_samples);
        for _ in 0..n_samples {
            let q = sample_fermionic_matrix(2, 1, 1, &mut rng).unwrap();
            v.push(q[(0, 0)].norm_sqr());
        }
        let (m, se) = mean_and_se(&v);
        assert!((m - 0.5).abs() < 4.0 * se, "E x = {m} +- {se}");

        // rectangular case N=3, n=2, m=1:
        // E[Q*Q] = s_(1)(1_2) s_(1)(1_1) / s_(1)(1_3) dual = 2/3
        let mut v = Vec::with_capacity(n_samples);
        for _ in 0..n_samples {
            let q = sample_fermionic_matrix(3, 2, 1, &mut rng).unwrap();
            v.push((adjoint(&q) * &q)[(0, 0)].re);
        }
        let (m, se) = mean_and_se(&v);
        assert!((m - 2.0 / 3.0).abs() < 4.0 * se, "E x = {m} +- {se}");

        // bi-unitary invariance: conjugating Q*Q by a fixed unitary leaves
        // the trace moment unchanged
        let w = sample_haar_unitary(2, &mut SeededRng::new(555, 0));
        let mut plain = Vec::with_capacity(n_samples);
        let mut conj = Vec::with_capacity(n_samples);
        for _ in 0..n_samples {
            let q = sample_fermionic_matrix(5, 2, 2, &mut rng).unwrap();
            let g = adjoint(&q) * &q;
            plain.push(g.diagonal().sum().re);
            let wg = &w * &g * adjoint(&w);
            conj.push(wg.diagonal().sum().re);
        }
        let (mp, sep) = mean_and_se(&plain);
        let (mc, sec) = mean_and_se(&conj);
        assert!((mp - mc).abs() < 4.0 * (sep * sep + sec * sec).sqrt());
        assert!(sample_fermionic_matrix(3, 1, 2, &mut rng).is_err());
    }

    #[test]
    fn heavy_tailed_substitution_is_exact_at_m1() {
        // the sampler rests on x = y/(1-y) carrying the weight
        // y^{n-m} (1-y)^N onto x^{n-m} (1+x)^{-(N+m+n)}; at m=1 both
        // sides are 1-D integrals and must agree for every moment
        use crate::montecarlo::{quadrature, Domain};
        for n in 1..=2 {
            for dim in 1..=3 {
                // the k-th moment exists only for k <= N
                for k in 0..=dim.min(2) {
                    let half_line = quadrature(
                        |x: f64| {
                            x.powi(k) * x.powi(n - 1) * (1.0 + x).powi(-(dim + 1 + n))
                        },
                        Domain::HalfLine(0.0),
                        1e-11,
                    )
                    .unwrap();
                    let unit = quadrature(
                        |y: f64| {
                            let x = y / (1.0 - y);
                            x.powi(k) * y.powi(n - 1) * (1.0 - y).powi(dim)
                        },
                        Domain::Interval(0.0, 1.0),
                        1e-11,
                    )
                    .unwrap();
                    assert!(
                        (half_line - unit).abs() < 1e-9,
                        "n={n} N={dim} k={k}: {half_line} vs {unit}"
                    );
                }
            }
        }
    }

    #[test]
    fn boundary_truncation_structure() {
        let mut rng = SeededRng::new(31, 0);
        // N=3, m=2: exactly one singular value equals 1,
        // rank(I - Q*Q) = N - m = 1
        for _ in 0..200 {
            let q = sample_boundary_truncation(3, 2, &mut rng).unwrap();
            let ev = hermitian_eigenvalues(&(CMat::identity(2, 2) - adjoint(&q) * &q));
            let near_zero = ev.iter().filter(|x| x.abs() <= 1e-8).count();
            assert_eq!(near_zero, 1, "eigenvalues of I - Q*Q: {ev:?}");
        }
        // E[s_(1)(Q*Q)] = s_(1)(1_2)^2 / s_(1)(1_3) = 4/3 at N=3, m=2
        let n_samples = 100_000;
        let mut v = Vec::with_capacity(n_samples);
        for _ in 0..n_samples {
            let q = sample_boundary_truncation(3, 2, &mut rng).unwrap();
            v.push((adjoint(&q) * &q).diagonal().sum().re);
        }
        let (m, se) = mean_and_se(&v);
        assert!((m - 4.0 / 3.0).abs() < 4.0 * se, "E s_1 = {m} +- {se}");

        assert!(sample_boundary_truncation(4, 2, &mut rng).is_err());
        assert!(sample_boundary_truncation(2, 2, &mut rng).is_err());
    }

    #[test]
    fn truncation_symmetry_of_singular_values() {
        // for 2m <= N the non-unit singular values of the (N-m)x(N-m)
        // truncation match those of the m x m truncation; N=5, m=2
        let mut rng = SeededRng::new(37, 0);
        let n_samples = 60_000;
        let (nn, m) = (5usize, 2usize);
        let mut small = Vec::with_capacity(n_samples);
        let mut large = Vec::with_capacity(n_samples);
        for _ in 0..n_samples {
            let x = sample_truncation_radial(nn, m, m, &mut rng).unwrap();
            small.push(x.iter().sum::<f64>());
            let y = sample_truncation_radial(nn, nn - m, nn - m, &mut rng).unwrap();
            // drop the N-2m values pinned at 1
            let free: f64 = y.iter().take(m).sum();
            let pinned = y.iter().skip(m).filter(|v| (*v - 1.0).abs() < 1e-9).count();
            assert_eq!(pinned, nn - 2 * m, "pinned multiplicity in {y:?}");
            large.push(free);
        }
        let (ms, ses) = mean_and_se(&small);
        let (ml, sel) = mean_and_se(&large);
        assert!(
            (ms - ml).abs() < 4.0 * (ses * ses + sel * sel).sqrt(),
            "{ms}+-{ses} vs {ml}+-{sel}"
        );
    }
}
