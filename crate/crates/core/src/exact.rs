//! Arbitrary-precision rational helpers: factorials, exact beta values,
//! rising factorials, and the `"num/den"` text form used in reports.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rational_from_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// Euler beta at positive integer arguments: `B(a,b) = (a-1)!(b-1)!/(a+b-1)!`.
pub fn beta_exact(a: u64, b: u64) -> Rational {
    assert!(a >= 1 && b >= 1, "beta_exact needs positive integers");
    Rational::new(factorial(a - 1) * factorial(b - 1), factorial(a + b - 1))
}

/// Rising factorial `x (x+1) ... (x+k-1)` over rationals.
pub fn rising(x: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut t = x.clone();
    for _ in 0..k {
        acc *= &t;
        t += Rational::one();
    }
    acc
}

/// Rising factorial in f64 for non-rational arguments.
pub fn rising_f64(x: f64, k: u64) -> f64 {
    let mut acc = 1.0;
    for t in 0..k {
        acc *= x + t as f64;
    }
    acc
}

/// `"num/den"` text form; integers print without the denominator.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    // split into integer part plus proper fraction so huge numerators and
    // denominators cannot both overflow the f64 conversion
    let q = r.numer() / r.denom();
    let rem = r.numer() - &q * r.denom();
    let qf: f64 = q.to_string().parse().unwrap_or(f64::NAN);
    qf + big_fraction_to_f64(rem, r.denom())
}

fn big_fraction_to_f64(num: BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let neg = num.is_negative();
    let mut num = num.abs();
    let den = den.clone();
    // scale to 18 decimal digits
    let scale = BigInt::from(10u64).pow(18);
    num *= &scale;
    let digits = (num / &den).to_string();
    let v: f64 = digits.parse::<f64>().unwrap_or(0.0) / 1e18;
    if neg {
        -v
    } else {
        v
    }
}

/// Exact determinant of a small rational matrix by fraction Gaussian
/// elimination. Returns zero for singular input.
pub fn det_rational(mat: &[Vec<Rational>]) -> Rational {
    let n = mat.len();
    let mut m: Vec<Vec<Rational>> = mat.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let pivot = (c..n).find(|&r| !m[r][c].is_zero());
        let Some(p) = pivot else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c].clone();
        let inv = m[c][c].clone().recip();
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone() * &inv;
            for k in c..n {
                let sub = f.clone() * &m[c][k];
                m[r][k] -= sub;
            }
        }
    }
    det
}
