//! Schur functions and their expansion coefficients.
//!
//! The primary evaluation route is Jacobi-Trudi over complete symmetric
//! functions obtained from power sums by the Newton recurrence, which is
//! total on degenerate spectra (the bialternant ratio is 0/0 there and is
//! kept only as a cross-check). Everything that can be exact is exact:
//! rational spectra, Weyl dimensions, exponential-expansion coefficients,
//! Hua coefficients at integer parameter.

use num_complex::Complex64;
use num_traits::{FromPrimitive, Num, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, rising, rising_f64, Rational};
use crate::linalg::{trace_powers, CMat};
use crate::partitions::Partition;

/// Scalar types the symmetric-function machinery runs over.
pub trait Scalar: Num + Clone + FromPrimitive {}
impl<T: Num + Clone + FromPrimitive> Scalar for T {}

/// `p_k = Tr(A^k)` for `k = 1..=k_max`.
pub fn power_sums(a: &CMat, k_max: usize) -> Result<Vec<Complex64>> {
    if a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "power sums need a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    Ok(trace_powers(a, k_max))
}

/// `p_k = sum_i x_i^k` for `k = 1..=k_max`.
pub fn power_sums_of_values<T: Scalar>(x: &[T], k_max: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(k_max);
    let mut pw: Vec<T> = x.to_vec();
    for k in 1..=k_max {
        let mut s = T::zero();
        for v in &pw {
            s = s + v.clone();
        }
        out.push(s);
        if k < k_max {
            for (v, base) in pw.iter_mut().zip(x) {
                *v = v.clone() * base.clone();
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetricBasis {
    Complete,
    Elementary,
}

/// Newton recurrences: `k h_k = sum p_i h_{k-i}` and
/// `k e_k = sum (-1)^{i-1} p_i e_{k-i}`. Returns `h_0..=h_{r_max}`
/// (respectively `e`), with `h_0 = e_0 = 1`.
pub fn symmetric_bases_from_power_sums<T: Scalar>(
    p: &[T],
    r_max: usize,
    basis: SymmetricBasis,
) -> Result<Vec<T>> {
    if p.len() < r_max {
        return Err(Error::Insufficient(format!(
            "need p_1..p_{r_max}, got {} power sums",
            p.len()
        )));
    }
    let mut out = vec![T::one()];
    for k in 1..=r_max {
        let mut s = T::zero();
        for i in 1..=k {
            let term = p[i - 1].clone() * out[k - i].clone();
            if basis == SymmetricBasis::Elementary && i % 2 == 0 {
                s = s - term;
            } else {
                s = s + term;
            }
        }
        let kk = T::from_usize(k).expect("small integer");
        out.push(s / kk);
    }
    Ok(out)
}

/// Determinant of a small matrix over a field, row-major. First-nonzero
/// pivoting; exact for rational scalars.
pub fn det_generic<T: Scalar>(mat: &mut [Vec<T>]) -> T {
    let n = mat.len();
    match n {
        0 => return T::one(),
        1 => return mat[0][0].clone(),
        2 => {
            return mat[0][0].clone() * mat[1][1].clone()
                - mat[0][1].clone() * mat[1][0].clone()
        }
        _ => {}
    }
    let mut det = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !mat[r][c].is_zero()) else {
            return T::zero();
        };
        if p != c {
            mat.swap(p, c);
            det = T::zero() - det;
        }
        det = det * mat[c][c].clone();
        let piv = mat[c][c].clone();
        for r in c + 1..n {
            if mat[r][c].is_zero() {
                continue;
            }
            let f = mat[r][c].clone() / piv.clone();
            for k in c..n {
                let sub = f.clone() * mat[c][k].clone();
                mat[r][k] = mat[r][k].clone() - sub;
            }
        }
    }
    det
}

/// Evaluates many Schur functions over one spectrum, sharing the `h_r`
/// table. `max_weight` bounds the weight of partitions passed to `eval`.
pub struct SchurEvaluator<T> {
    h: Vec<T>,
    nvars: usize,
}

impl<T: Scalar> SchurEvaluator<T> {
    pub fn new(values: &[T], max_weight: u32) -> Self {
        // Jacobi-Trudi needs h up to lambda_1 + l - 1 <= weight + length - 1
        let deg = (max_weight as usize).saturating_mul(2).max(1);
        let p = power_sums_of_values(values, deg);
        let h = symmetric_bases_from_power_sums(&p, deg, SymmetricBasis::Complete)
            .expect("power sums sized to degree");
        SchurEvaluator {
            h,
            nvars: values.len(),
        }
    }

    /// Builds the evaluator from precomputed power sums of a spectrum with
    /// `nvars` values; needs `p_1..p_{2 max_weight}`.
    pub fn from_power_sums(p: &[T], nvars: usize, max_weight: u32) -> Result<Self> {
        let deg = (max_weight as usize).saturating_mul(2).max(1);
        let h = symmetric_bases_from_power_sums(p, deg, SymmetricBasis::Complete)?;
        Ok(SchurEvaluator { h, nvars })
    }

    /// `s_lambda` of the spectrum; zero when the partition is longer than
    /// the variable count.
    pub fn eval(&self, lambda: &Partition) -> T {
        let l = lambda.length();
        if l == 0 {
            return T::one();
        }
        if l > self.nvars {
            return T::zero();
        }
        let mut m: Vec<Vec<T>> = (1..=l)
            .map(|i| {
                (1..=l)
                    .map(|j| {
                        let idx = lambda.part(i) as i64 - i as i64 + j as i64;
                        if idx < 0 {
                            T::zero()
                        } else {
                            self.h
                                .get(idx as usize)
                                .cloned()
                                .unwrap_or_else(|| panic!("h table too short: need h_{idx}"))
                        }
                    })
                    .collect()
            })
            .collect();
        det_generic(&mut m)
    }
}

/// `s_lambda(x_1..x_n)` by Jacobi-Trudi; total on any finite spectrum.
pub fn schur_eval<T: Scalar>(lambda: &Partition, x: &[T]) -> T {
    if lambda.length() > x.len() {
        return T::zero();
    }
    SchurEvaluator::new(x, lambda.weight().max(1)).eval(lambda)
}

/// `s_lambda` of a square matrix via traces of powers; no eigendecomposition.
pub fn schur_of_matrix(lambda: &Partition, a: &CMat) -> Result<Complex64> {
    if a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "schur_of_matrix needs a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let l = lambda.length();
    if l == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if l > a.nrows() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let deg = (lambda.part(1) as usize + l - 1).max(1);
    let p = power_sums(a, deg)?;
    let h = symmetric_bases_from_power_sums(&p, deg, SymmetricBasis::Complete)?;
    let mut m: Vec<Vec<Complex64>> = (1..=l)
        .map(|i| {
            (1..=l)
                .map(|j| {
                    let idx = lambda.part(i) as i64 - i as i64 + j as i64;
                    if idx < 0 {
                        Complex64::zero()
                    } else {
                        h[idx as usize]
                    }
                })
                .collect()
        })
        .collect();
    Ok(det_generic(&mut m))
}

/// Bialternant ratio `det(x_i^{m+lambda_j-j}) / det(x_i^{m-j})`; valid only
/// for pairwise-distinct spectra, used as a cross-check of Jacobi-Trudi.
pub fn schur_bialternant(lambda: &Partition, x: &[Complex64]) -> Result<Complex64> {
    let m = x.len();
    if lambda.length() > m {
        return Ok(Complex64::zero());
    }
    for i in 0..m {
        for j in i + 1..m {
            if (x[i] - x[j]).norm() < 1e-14 {
                return Err(Error::BadParameter(
                    "bialternant needs pairwise-distinct spectrum values".into(),
                ));
            }
        }
    }
    let mut num: Vec<Vec<Complex64>> = (0..m)
        .map(|i| {
            (1..=m)
                .map(|j| x[i].powu(m as u32 + lambda.part(j) - j as u32))
                .collect()
        })
        .collect();
    let mut den: Vec<Vec<Complex64>> = (0..m)
        .map(|i| (1..=m).map(|j| x[i].powu((m - j) as u32)).collect())
        .collect();
    Ok(det_generic(&mut num) / det_generic(&mut den))
}

const SSYT_MAX_WEIGHT: u32 = 8;
const SSYT_MAX_VARS: usize = 6;

/// Brute-force Schur value as the monomial sum over semistandard tableaux
/// of shape `lambda` with entries `1..=|x|`. Independent of the
/// Jacobi-Trudi route; exact on rational inputs.
pub fn schur_ssyt_oracle<T: Scalar>(lambda: &Partition, x: &[T]) -> Result<T> {
    if lambda.weight() > SSYT_MAX_WEIGHT || x.len() > SSYT_MAX_VARS {
        return Err(Error::BoundExceeded(format!(
            "ssyt oracle bounds |lambda| <= {SSYT_MAX_WEIGHT}, vars <= {SSYT_MAX_VARS}"
        )));
    }
    if lambda.length() > x.len() {
        return Ok(T::zero());
    }
    if lambda.is_empty() {
        return Ok(T::one());
    }
    let shape: Vec<usize> = lambda.parts().iter().map(|&p| p as usize).collect();
    let mut fill: Vec<Vec<usize>> = shape.iter().map(|&w| vec![0; w]).collect();
    let mut total = T::zero();

    // order cells row-major; entry constraints: weakly increasing along
    // rows, strictly increasing down columns
    fn rec<T: Scalar>(
        shape: &[usize],
        fill: &mut Vec<Vec<usize>>,
        x: &[T],
        r: usize,
        c: usize,
        acc: T,
        total: &mut T,
    ) {
        let rows = shape.len();
        if r == rows {
            *total = total.clone() + acc;
            return;
        }
        let (nr, nc) = if c + 1 < shape[r] {
            (r, c + 1)
        } else {
            (r + 1, 0)
        };
        let lo = {
            let mut lo = 1;
            if c > 0 {
                lo = lo.max(fill[r][c - 1]);
            }
            if r > 0 {
                lo = lo.max(fill[r - 1][c] + 1);
            }
            lo
        };
        for v in lo..=x.len() {
            fill[r][c] = v;
            let acc2 = acc.clone() * x[v - 1].clone();
            rec(shape, fill, x, nr, nc, acc2, total);
        }
    }
    rec(&shape, &mut fill, x, 0, 0, T::one(), &mut total);
    Ok(total)
}

/// Exact `s_lambda(1_n)` by the Weyl dimension formula; zero when the
/// partition is longer than `n`.
pub fn weyl_dimension(lambda: &Partition, n: u32) -> Rational {
    let l = lambda.length();
    if l as u32 > n {
        return Rational::zero();
    }
    if l == 0 {
        return Rational::from_integer(1.into());
    }
    let mut val = Rational::from_integer(1.into());
    for i in 1..=l {
        for j in i + 1..=l {
            let d = lambda.part(i) as i64 - i as i64 - lambda.part(j) as i64 + j as i64;
            val *= Rational::from_integer(d.into());
        }
    }
    for j in 1..=l {
        let lj = lambda.part(j) as u64;
        let num = factorial(n as u64 + lj - j as u64);
        let den = factorial(l as u64 + lj - j as u64) * factorial(n as u64 - j as u64);
        val *= Rational::new(num, den);
    }
    val
}

/// Coefficient of `s_lambda` in the Schur expansion of `exp(Tr M)`:
/// `prod_{i<j<=l}(lambda_i-i-lambda_j+j) / prod_{j<=l}(l+lambda_j-j)!`.
/// Independent of any padding of the partition by zeros.
pub fn exp_coeff(lambda: &Partition) -> Rational {
    let l = lambda.length();
    let mut val = Rational::from_integer(1.into());
    for i in 1..=l {
        for j in i + 1..=l {
            let d = lambda.part(i) as i64 - i as i64 - lambda.part(j) as i64 + j as i64;
            val *= Rational::from_integer(d.into());
        }
    }
    for j in 1..=l {
        val /= Rational::from_integer(factorial(l as u64 + lambda.part(j) as u64 - j as u64));
    }
    val
}

/// Expansion coefficient `det(alpha_{lambda_k - k + j})_{j,k=1..m}` of a
/// multiplicative symmetric functional with Fourier coefficients `alpha`
/// (`alpha_r := 0` for `r < 0`).
pub fn multiplicative_expansion_coeff<T: Scalar>(
    alpha: &[T],
    lambda: &Partition,
    m: usize,
) -> Result<T> {
    if lambda.length() > m {
        return Err(Error::BadParameter(format!(
            "multiplicative coefficient needs length(lambda) <= m, got {} > {m}",
            lambda.length()
        )));
    }
    let need = lambda.part(1) as usize + m;
    if alpha.len() < need {
        return Err(Error::Insufficient(format!(
            "need alpha_0..alpha_{}, got {} entries",
            need - 1,
            alpha.len()
        )));
    }
    let mut mat: Vec<Vec<T>> = (1..=m)
        .map(|j| {
            (1..=m)
                .map(|k| {
                    let idx = lambda.part(k) as i64 - k as i64 + j as i64;
                    if idx < 0 {
                        T::zero()
                    } else {
                        alpha[idx as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    Ok(det_generic(&mut mat))
}

fn hua_preconditions(lambda: &Partition, a: f64, m: usize) -> Result<()> {
    if lambda.length() > m {
        return Err(Error::BadParameter(format!(
            "Hua coefficient needs length(lambda) <= m, got {} > {m}",
            lambda.length()
        )));
    }
    if a < 0.0 || !a.is_finite() {
        return Err(Error::GammaPole {
            context: "Hua coefficient (a must be >= 0)".into(),
            arg: a,
        });
    }
    Ok(())
}

/// Coefficient `beta_lambda` of `s_lambda(1_m) s_lambda(z)` in the Schur
/// expansion of `prod_j (1 - z_j)^{-a}`. Gamma ratios are evaluated as
/// rising factorials, which is pole-free for `a >= 0`.
pub fn hua_coeff_bosonic(lambda: &Partition, a: f64, m: usize) -> Result<f64> {
    hua_preconditions(lambda, a, m)?;
    if a.fract() == 0.0 {
        let exact = hua_coeff_bosonic_exact(lambda, a as i64, m)?;
        return Ok(crate::exact::rational_to_f64(&exact));
    }
    let mut val = 1.0;
    for j in 1..=m {
        let lj = lambda.part(j) as u64;
        val *= rising_f64(a - j as f64 + 1.0, lj);
        val *= fact_f64(m as u64 - j as u64) / fact_f64(m as u64 + lj - j as u64);
    }
    Ok(val)
}

/// Exact-rational bosonic Hua coefficient at integer `a >= 0`.
pub fn hua_coeff_bosonic_exact(lambda: &Partition, a: i64, m: usize) -> Result<Rational> {
    hua_preconditions(lambda, a as f64, m)?;
    let mut val = Rational::from_integer(1.into());
    for j in 1..=m {
        let lj = lambda.part(j) as u64;
        val *= rising(&Rational::from_integer((a - j as i64 + 1).into()), lj);
        val *= Rational::new(
            factorial(m as u64 - j as u64),
            factorial(m as u64 + lj - j as u64),
        );
    }
    Ok(val)
}

/// Coefficient `beta_lambda` of `s_lambda(1_m) s_lambda(z)` in the Schur
/// expansion of `prod_j (1 + z_j)^{a}`. For integer `a = N` it vanishes
/// whenever `lambda_1 >= N + 1`.
pub fn hua_coeff_fermionic(lambda: &Partition, a: f64, m: usize) -> Result<f64> {
    hua_preconditions(lambda, a, m)?;
    if a.fract() == 0.0 {
        let exact = hua_coeff_fermionic_exact(lambda, a as i64, m)?;
        return Ok(crate::exact::rational_to_f64(&exact));
    }
    let mut val = 1.0;
    for j in 1..=m {
        let lj = lambda.part(j) as i64;
        let k = m as i64 + lj + 1 - 2 * j as i64;
        let ratio = if k >= 0 {
            rising_f64(a - lj as f64 + j as f64, k as u64)
        } else {
            1.0 / rising_f64(a + m as f64 - j as f64 + 1.0, (-k) as u64)
        };
        val *= ratio;
        val *= fact_f64(m as u64 - j as u64) / fact_f64(m as u64 + lj as u64 - j as u64);
    }
    Ok(val)
}

/// Exact-rational fermionic Hua coefficient at integer `a >= 0`.
pub fn hua_coeff_fermionic_exact(lambda: &Partition, a: i64, m: usize) -> Result<Rational> {
    hua_preconditions(lambda, a as f64, m)?;
    let mut val = Rational::from_integer(1.into());
    for j in 1..=m {
        let lj = lambda.part(j) as i64;
        let k = m as i64 + lj + 1 - 2 * j as i64;
        let ratio = if k >= 0 {
            rising(
                &Rational::from_integer((a - lj + j as i64).into()),
                k as u64,
            )
        } else {
            let den = rising(
                &Rational::from_integer((a + m as i64 - j as i64 + 1).into()),
                (-k) as u64,
            );
            Rational::from_integer(1.into()) / den
        };
        val *= ratio;
        val *= Rational::new(
            factorial(m as u64 - j as u64),
            factorial(m as u64 + lj as u64 - j as u64),
        );
    }
    Ok(val)
}

fn fact_f64(n: u64) -> f64 {
    (1..=n).map(|k| k as f64).product()
}
