//! Exact rational and integer helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision reduced rational with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Exponent `e` of a power of two, if `v = 2^e`.
pub fn log2_exact(v: &BigInt) -> Option<u32> {
    if !v.is_positive() {
        return None;
    }
    let tz = v.trailing_zeros()?;
    if (v >> tz).is_one() {
        Some(tz as u32)
    } else {
        None
    }
}

pub fn is_dyadic(r: &Rational) -> bool {
    log2_exact(r.denom()).is_some()
}

/// Smallest `k` with `r * 2^k` an integer.
pub fn granularity_of(r: &Rational) -> Result<u32> {
    log2_exact(r.denom()).ok_or_else(|| Error::NonDyadic(format_rational(r)))
}

/// Reduces `r` into `[0, m)`.
pub fn reduce_mod(r: &Rational, m: i64) -> Rational {
    let m = Rational::from_integer(BigInt::from(m));
    let q = (r / &m).floor();
    r - q * m
}

/// True when `r` is an integer with odd value.
pub fn is_odd_integer(r: &Rational) -> bool {
    r.is_integer() && r.numer().is_odd()
}

/// `"num/den"`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"a/b"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(a, b))
        }
        None => {
            let a: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(a))
        }
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Row `n` of Pascal's triangle.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::one());
        row = next;
    }
    row
}

/// `binom(n, k) mod 2` via Lucas: odd iff the bits of `k` are a subset of `n`'s.
pub fn binomial_is_odd(n: u64, k: u64) -> bool {
    k <= n && (k & !n) == 0
}

pub fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}
