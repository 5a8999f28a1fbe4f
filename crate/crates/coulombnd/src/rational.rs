//! Exact rational scalars.
//!
//! `Rational` is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator; every exact quantity in the crate (coupling
//! constants, potential exponents, energies, separation constants,
//! polynomial coefficients) is one of these.

use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};

pub type Rational = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as an exact rational.
pub fn rint(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `num/den` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| format!("invalid rational `{s}`: {e}"))
}

/// `k!` as a big integer.
pub fn factorial(k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=k as u64 {
        acc *= BigInt::from(j);
    }
    acc
}

/// Binomial coefficient `C(n, k)` for natural arguments.
pub fn binom_u32(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k as u64 {
        num *= BigInt::from(n as u64 - j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

/// Generalized binomial `C(x, k) = x(x-1)...(x-k+1)/k!` with rational top.
pub fn binom_rational(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for j in 0..k {
        acc *= x - rint(j as i64);
    }
    acc / Rational::from_integer(factorial(k))
}

/// Integer power with negative exponents allowed. Panics on `0^negative`.
pub fn pow_int(base: &Rational, exp: i64) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    let mut acc = Rational::one();
    let b = if exp < 0 {
        assert!(!base.is_zero(), "zero raised to a negative power");
        base.recip()
    } else {
        base.clone()
    };
    for _ in 0..exp.unsigned_abs() {
        acc *= &b;
    }
    acc
}

/// Exact `k`-th root of a big integer, if one exists.
/// Negative inputs are accepted for odd `k`.
pub fn exact_nth_root(x: &BigInt, k: u32) -> Option<BigInt> {
    assert!(k >= 1);
    if x.is_negative() {
        if k.is_multiple_of(2) {
            return None;
        }
        return exact_nth_root(&-x, k).map(|r| -r);
    }
    let r = x.nth_root(k);
    if num::pow::pow(r.clone(), k as usize) == *x {
        Some(r)
    } else {
        None
    }
}

/// Exact `base^(a/b)` when the result is rational.
pub fn exact_pow(base: &Rational, exp: &Rational) -> Option<Rational> {
    if exp.is_integer() {
        let e: i64 = exp.to_integer().try_into().ok()?;
        if base.is_zero() && e < 0 {
            return None;
        }
        return Some(pow_int(base, e));
    }
    if base.is_zero() {
        return if exp.is_negative() {
            None
        } else {
            Some(Rational::zero())
        };
    }
    let b: u32 = exp.denom().try_into().ok()?;
    let a: i64 = exp.numer().try_into().ok()?;
    let num_root = exact_nth_root(base.numer(), b)?;
    let den_root = exact_nth_root(base.denom(), b)?;
    Some(pow_int(&Rational::new(num_root, den_root), a))
}
