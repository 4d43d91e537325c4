//! Closed forms for F (elements of GF(q^n) with given trace and subtrace),
//! F* (n-tuples over GF(q) with given coordinate sum and pair sum) and P
//! (monic irreducibles with given trace and subtrace).
//!
//! Every branch is written as `q^(n-2) + sign * weight * q^e` with
//! `sign = (-1)^(m k)` possibly negated. In the `n = 4m-1` branch the sign
//! is `(-1)^(m k)`; writing it as `(-1)^((m-1) k)` disagrees with
//! enumeration whenever `k` is odd (for q = 2, n = 3 the element count with
//! trace 0 and subtrace 0 is 1, not 3).

use num_bigint::BigInt;

use super::arith::{divisors, exact_div, mobius, nonnegative, q_pow};
use crate::error::{Error, Result};
use crate::gf2k::{FieldElement, FieldParams};

/// Negates the sign term of one branch of the F closed form. Used only to
/// check that the oracle comparisons are sensitive.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignFlip {
    None,
    /// `n = 4m+1`
    OneMod4,
    /// `n = 4m+2`
    TwoMod4,
    /// `n = 4m-1`
    ThreeMod4,
    /// `n = 4m`
    ZeroMod4,
}

impl SignFlip {
    pub const BRANCHES: [SignFlip; 4] = [
        SignFlip::OneMod4,
        SignFlip::TwoMod4,
        SignFlip::ThreeMod4,
        SignFlip::ZeroMod4,
    ];

    fn applies(self, n: usize) -> bool {
        matches!(
            (self, n % 4),
            (SignFlip::OneMod4, 1)
                | (SignFlip::TwoMod4, 2)
                | (SignFlip::ThreeMod4, 3)
                | (SignFlip::ZeroMod4, 0)
        )
    }
}

/// `(-1)^(m k)`.
fn sign(m: usize, k: u32) -> i64 {
    if (m as u64 * k as u64) % 2 == 1 {
        -1
    } else {
        1
    }
}

/// F(1, t, s): the element `t` itself, whose pair sum is empty.
pub fn f_one(t: FieldElement, s: FieldElement) -> BigInt {
    let _ = t;
    BigInt::from(s.is_zero() as u8)
}

fn check_degree(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::DegreeTooSmall { got: n, need: 2 });
    }
    Ok(())
}

/// `chi(s / t^2)` for nonzero `t`.
fn chi_ratio(params: FieldParams, t: FieldElement, s: FieldElement) -> i64 {
    let t2 = params.square(t);
    let ratio = params.mul(s, params.inv(t2).expect("t is nonzero"));
    params.character(ratio) as i64
}

/// Elements of GF(q^n) with trace `t` and subtrace `s`, `n >= 2`.
pub fn f_closed(params: FieldParams, n: usize, t: FieldElement, s: FieldElement) -> Result<BigInt> {
    f_closed_mutated(params, n, t, s, SignFlip::None)
}

#[doc(hidden)]
pub fn f_closed_mutated(
    params: FieldParams,
    n: usize,
    t: FieldElement,
    s: FieldElement,
    flip: SignFlip,
) -> Result<BigInt> {
    check_degree(n)?;
    let k = params.k();
    let main = q_pow(params, n as u64 - 2);
    let flipped = |sg: i64| if flip.applies(n) { -sg } else { sg };
    let value = match n % 4 {
        1 => {
            let m = (n - 1) / 4;
            let sg = flipped(sign(m, k));
            main + sg * params.v_weight(s) * q_pow(params, 2 * m as u64 - 1)
        }
        3 => {
            let m = (n + 1) / 4;
            let sg = flipped(sign(m, k));
            let arg = params.add(params.square(t), s);
            main + sg * params.v_weight(arg) * q_pow(params, 2 * m as u64 - 2)
        }
        2 => {
            let m = (n - 2) / 4;
            if t.is_zero() {
                main
            } else {
                let sg = flipped(sign(m, k));
                main - sg * chi_ratio(params, t, s) * q_pow(params, 2 * m as u64)
            }
        }
        _ => {
            let m = n / 4;
            if t.is_zero() {
                let sg = flipped(sign(m, k));
                main - sg * params.v_weight(s) * q_pow(params, 2 * m as u64 - 1)
            } else {
                main
            }
        }
    };
    nonnegative(value)
}

/// Tuples in GF(q)^n with coordinate sum `t` and pair sum `s`, `n >= 2`.
pub fn fstar_closed(
    params: FieldParams,
    n: usize,
    t: FieldElement,
    s: FieldElement,
) -> Result<BigInt> {
    check_degree(n)?;
    let k = params.k();
    let main = q_pow(params, n as u64 - 2);
    let value = match n % 4 {
        1 => {
            let m = (n - 1) / 4;
            main + sign(m, k) * params.v_weight(s) * q_pow(params, 2 * m as u64 - 1)
        }
        2 => {
            let m = (n - 2) / 4;
            if t.is_zero() {
                main
            } else {
                main + sign(m, k) * chi_ratio(params, t, s) * q_pow(params, 2 * m as u64)
            }
        }
        3 => {
            let m = (n + 1) / 4;
            let arg = params.add(params.square(t), s);
            main + sign(m, k) * params.v_weight(arg) * q_pow(params, 2 * m as u64 - 2)
        }
        _ => {
            let m = n / 4;
            if t.is_zero() {
                main + sign(m, k) * params.v_weight(s) * q_pow(params, 2 * m as u64 - 1)
            } else {
                main
            }
        }
    };
    nonnegative(value)
}

/// Roots of `x^2 + t x + s` in GF(q): F*(2, t, s).
fn fstar_base(params: FieldParams, t: FieldElement, s: FieldElement) -> u64 {
    if t.is_zero() {
        1
    } else if params.trace_to_gf2(params.div(s, params.square(t)).expect("t nonzero")) == 0 {
        2
    } else {
        0
    }
}

/// F* by fixing the last coordinate `a`:
/// `F*(n, t, s) = sum_a F*(n-1, t+a, s+a t+a^2)`, down to the quadratic
/// root count at `n = 2`. Costs `q^(n-2)` per entry.
pub fn fstar_recursive(
    params: FieldParams,
    n: usize,
    t: FieldElement,
    s: FieldElement,
) -> Result<BigInt> {
    check_degree(n)?;
    fn go(params: FieldParams, n: usize, t: FieldElement, s: FieldElement) -> BigInt {
        if n == 2 {
            return BigInt::from(fstar_base(params, t, s));
        }
        params
            .elements()
            .map(|a| {
                let t2 = params.add(t, a);
                let s2 = params.add(params.add(s, params.mul(a, t)), params.square(a));
                go(params, n - 1, t2, s2)
            })
            .sum()
    }
    Ok(go(params, n, t, s))
}

/// The full F* table from the same recursion applied level by level
/// (`O(n q^3)`), row-major in `(t, s)`.
pub fn fstar_recursive_table(params: FieldParams, n: usize) -> Result<Vec<BigInt>> {
    check_degree(n)?;
    let q = params.q() as usize;
    let mut level: Vec<BigInt> = (0..q * q)
        .map(|i| {
            let t = FieldElement::from_bits((i / q) as u32);
            let s = FieldElement::from_bits((i % q) as u32);
            BigInt::from(fstar_base(params, t, s))
        })
        .collect();
    for _ in 3..=n {
        let mut next = vec![BigInt::default(); q * q];
        for t in params.elements() {
            for a in params.elements() {
                let t2 = params.add(t, a);
                let shift = params.add(params.mul(a, t), params.square(a));
                let row = &level[t2.index() * q..(t2.index() + 1) * q];
                let out = &mut next[t.index() * q..(t.index() + 1) * q];
                for s in params.elements() {
                    out[s.index()] += &row[params.add(s, shift).index()];
                }
            }
        }
        level = next;
    }
    Ok(level)
}

/// F for every `n >= 1`.
pub fn f_dispatch(
    params: FieldParams,
    n: usize,
    t: FieldElement,
    s: FieldElement,
) -> Result<BigInt> {
    f_dispatch_mutated(params, n, t, s, SignFlip::None)
}

fn f_dispatch_mutated(
    params: FieldParams,
    n: usize,
    t: FieldElement,
    s: FieldElement,
    flip: SignFlip,
) -> Result<BigInt> {
    match n {
        0 => Err(Error::DegreeTooSmall { got: 0, need: 1 }),
        1 => Ok(f_one(t, s)),
        _ => f_closed_mutated(params, n, t, s, flip),
    }
}

/// Monic irreducibles of degree `n >= 2` with trace `t` and subtrace `s`,
/// by Möbius inversion over F.
pub fn p_count(params: FieldParams, n: usize, t: FieldElement, s: FieldElement) -> Result<BigInt> {
    check_degree(n)?;
    let nn = n as u64;
    let mut sum = BigInt::default();
    for d in divisors(nn) {
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        let e = (nn / d) as usize;
        if t.is_zero() {
            if d % 2 == 0 {
                continue;
            }
            let mut term = f_dispatch(params, e, t, s)?;
            if n.is_multiple_of(2) {
                term -= q_pow(params, nn / (2 * d) - 1);
            }
            sum += mu * term;
        } else {
            match d % 4 {
                1 => sum += mu * f_dispatch(params, e, t, s)?,
                3 => {
                    let shifted = params.add(params.square(t), s);
                    sum += mu * f_dispatch(params, e, t, shifted)?;
                }
                _ => {}
            }
        }
    }
    nonnegative(exact_div(&sum, &BigInt::from(nn))?)
}
