//! Möbius function, divisors and the classical irreducible counts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::gf2k::FieldParams;

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn mobius(d: u64) -> i32 {
    assert!(d >= 1, "mobius is defined for d >= 1");
    let mut n = d;
    let mut sign = 1;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub(crate) fn q_pow(params: FieldParams, e: u64) -> BigInt {
    BigInt::from(1u8) << (params.k() as u64 * e)
}

/// Exact division; a remainder signals an implementation bug.
pub(crate) fn exact_div(numerator: &BigInt, denominator: &BigInt) -> Result<BigInt> {
    let (quot, rem) = numerator.div_rem(denominator);
    if !rem.is_zero() {
        return Err(Error::InexactDivision {
            numerator: numerator.to_string(),
            denominator: denominator.to_string(),
        });
    }
    Ok(quot)
}

pub(crate) fn nonnegative(value: BigInt) -> Result<BigInt> {
    if value.is_negative() {
        return Err(Error::NegativeCount(value.to_string()));
    }
    Ok(value)
}

/// Number of monic irreducibles of degree `n`:
/// `(1/n) sum_{d|n} mu(d) q^(n/d)`.
pub fn classical_count(params: FieldParams, n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::DegreeTooSmall { got: 0, need: 1 });
    }
    let n = n as u64;
    let sum: BigInt = divisors(n)
        .into_iter()
        .map(|d| mobius(d) * q_pow(params, n / d))
        .sum();
    nonnegative(exact_div(&sum, &BigInt::from(n))?)
}

/// Number of monic irreducibles of degree `n` with a given nonzero trace:
/// `(1/(q n)) sum_{d|n, d odd} mu(d) q^(n/d)`.
pub fn classical_count_trace_nonzero(params: FieldParams, n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::DegreeTooSmall { got: 0, need: 1 });
    }
    let n = n as u64;
    let sum: BigInt = divisors(n)
        .into_iter()
        .filter(|d| d % 2 == 1)
        .map(|d| mobius(d) * q_pow(params, n / d))
        .sum();
    let denom = BigInt::from(params.q()) * BigInt::from(n);
    nonnegative(exact_div(&sum, &denom)?)
}
