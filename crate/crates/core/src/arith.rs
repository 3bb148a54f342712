//! Exact scalar helpers shared by the polynomial and series code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::invalid(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::invalid(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Combinatorial binomial: zero unless `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient read as a polynomial in the top entry:
/// `top (top-1) ... (top-k+1) / k!`. Defined for any integer `top`.
pub fn binomial_poly(top: &BigInt, k: u64) -> BigInt {
    let mut num = BigInt::one();
    for i in 0..k {
        num *= top - BigInt::from(i);
    }
    let (q, r) = num.div_rem(&factorial(k));
    debug_assert!(r.is_zero());
    q
}

/// Same as [`binomial_poly`] for a rational top entry.
pub fn binomial_rational(top: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= top - Rational::from_integer(BigInt::from(i));
    }
    acc / Rational::from_integer(factorial(k))
}

pub fn sign(parity: u64) -> i32 {
    if parity.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn is_non_positive_integer(r: &Rational) -> bool {
    is_integer(r) && !r.is_positive()
}
