//! Brute-force ground truth: exhaustive sweeps over GF(q^n) and GF(q)^n and
//! enumeration of monic irreducibles. Nothing here calls a closed form.

mod verify;

pub use verify::{
    verify_grid, verify_grid_with, Check, Family, Mismatch, Status, Totals, VerifyOptions,
    VerifyReport,
};

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::counting::{CountKind, CountTable};
use crate::error::{Error, Result};
use crate::extfield::{ExtField, PackedExtField};
use crate::gf2k::{FieldElement, FieldParams};
use crate::polyring::{monic_irreducible_indices, subtrace_of, trace_of, Poly};

/// Caps on exhaustive work. `max_points` bounds `q^n` for element and tuple
/// sweeps, `max_poly` bounds `q^n` for polynomial enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_points: u64,
    pub max_poly: u64,
    /// Wall-clock bound in seconds.
    pub time_cap: Option<u64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_points: 1 << 20,
            max_poly: 1 << 22,
            time_cap: None,
        }
    }
}

impl Budget {
    pub fn validate(&self) -> Result<()> {
        if self.max_points == 0 || self.max_poly == 0 || self.time_cap == Some(0) {
            return Err(Error::PreconditionViolated(
                "budget caps must be positive".into(),
            ));
        }
        Ok(())
    }

    pub(crate) fn deadline(&self) -> Deadline {
        Deadline {
            cap: self.time_cap,
            end: self
                .time_cap
                .map(|secs| Instant::now() + Duration::from_secs(secs)),
        }
    }

    /// `q^n` when it is at most `cap`.
    pub(crate) fn admit(
        params: FieldParams,
        n: usize,
        cap: u64,
        what: &'static str,
    ) -> Result<u64> {
        let bits = params.k() as u64 * n as u64;
        if bits < 64 && (1u64 << bits) <= cap {
            Ok(1u64 << bits)
        } else {
            Err(Error::BudgetExceeded {
                what,
                needed: if bits < 128 { 1u128 << bits } else { u128::MAX },
                cap: cap as u128,
            })
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Deadline {
    cap: Option<u64>,
    end: Option<Instant>,
}

impl Deadline {
    pub(crate) fn check(&self) -> Result<()> {
        match (self.cap, self.end) {
            (Some(cap), Some(end)) if Instant::now() > end => Err(Error::TimeCapExceeded(cap)),
            _ => Ok(()),
        }
    }
}

fn into_table(params: FieldParams, n: usize, kind: CountKind, tally: Vec<u64>) -> CountTable {
    CountTable::from_entries(
        params,
        n,
        kind,
        tally.into_iter().map(BigInt::from).collect(),
    )
    .expect("tally has q^2 entries")
}

/// Splits `0..len` into contiguous ranges so that the per-range tallies
/// (each `q^2` counters) stay small.
fn ranges(len: u64, q: u64) -> Vec<(u64, u64)> {
    let by_memory = ((1u64 << 24) / (q * q)).max(1);
    let wanted = (rayon::current_num_threads() as u64 * 4).max(1);
    let parts = wanted.min(by_memory).min(len).max(1);
    let step = len.div_ceil(parts);
    (0..parts)
        .map(|i| (i * step, ((i + 1) * step).min(len)))
        .filter(|(a, b)| a < b)
        .collect()
}

fn merge(parts: Vec<Vec<u64>>, cells: usize) -> Vec<u64> {
    parts.into_iter().fold(vec![0u64; cells], |mut acc, part| {
        for (a, b) in acc.iter_mut().zip(part) {
            *a += b;
        }
        acc
    })
}

/// Tally of `(Tr(beta), St(beta))` over every element of GF(q^n), row-major.
pub(crate) fn element_tally(field: &ExtField) -> Result<Vec<u64>> {
    let packed = PackedExtField::new(field)?;
    let q = packed.q() as u64;
    let cells = (q * q) as usize;
    let parts: Vec<Vec<u64>> = ranges(packed.size(), q)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut tally = vec![0u64; cells];
            for a in lo..hi {
                let (t, s) = packed.trace_subtrace(a as u32);
                tally[(t as u64 * q + s as u64) as usize] += 1;
            }
            tally
        })
        .collect();
    Ok(merge(parts, cells))
}

/// F by sweeping every element of GF(q^n), built on the default extension
/// modulus.
pub fn oracle_f(params: FieldParams, n: usize, budget: &Budget) -> Result<CountTable> {
    Budget::admit(params, n.max(2), budget.max_points, "element sweep")?;
    let field = ExtField::new(params, n, None)?;
    oracle_f_in(&field, budget)
}

/// F by sweeping the elements of a given GF(q^n).
pub fn oracle_f_in(field: &ExtField, budget: &Budget) -> Result<CountTable> {
    let (params, n) = (field.base(), field.degree());
    Budget::admit(params, n.max(2), budget.max_points, "element sweep")?;
    Ok(into_table(params, n, CountKind::F, element_tally(field)?))
}

/// Tally of `(sum a_i, sum_{i<j} a_i a_j)` over GF(q)^n, row-major.
pub(crate) fn tuple_tally(params: FieldParams, n: usize) -> Vec<u64> {
    let q = params.q() as u64;
    let cells = (q * q) as usize;

    // Extends the prefix sums (e1, e2) by `left` more coordinates.
    fn walk(
        params: FieldParams,
        left: usize,
        e1: FieldElement,
        e2: FieldElement,
        tally: &mut [u64],
    ) {
        let q = params.q() as usize;
        if left == 0 {
            tally[e1.index() * q + e2.index()] += 1;
            return;
        }
        for a in params.elements() {
            let next2 = params.add(e2, params.mul(e1, a));
            walk(params, left - 1, params.add(e1, a), next2, tally);
        }
    }

    let parts: Vec<Vec<u64>> = (0..q as u32)
        .into_par_iter()
        .map(|first| {
            let mut tally = vec![0u64; cells];
            walk(
                params,
                n - 1,
                FieldElement::from_bits(first),
                FieldElement::ZERO,
                &mut tally,
            );
            tally
        })
        .collect();
    merge(parts, cells)
}

/// F* by sweeping every tuple in GF(q)^n.
pub fn oracle_fstar(params: FieldParams, n: usize, budget: &Budget) -> Result<CountTable> {
    if n < 1 {
        return Err(Error::DegreeTooSmall { got: n, need: 1 });
    }
    Budget::admit(params, n.max(2), budget.max_points, "tuple sweep")?;
    Ok(into_table(
        params,
        n,
        CountKind::Fstar,
        tuple_tally(params, n),
    ))
}

/// Tally of `(trace, subtrace)` over the monic irreducibles of degree `n`.
pub(crate) fn irreducible_tally(
    params: FieldParams,
    n: usize,
    budget: &Budget,
) -> Result<Vec<u64>> {
    if n < 2 {
        return Err(Error::DegreeTooSmall { got: n, need: 2 });
    }
    let q = params.q() as usize;
    let mut tally = vec![0u64; q * q];
    for low in monic_irreducible_indices(params, n, None, budget)? {
        let p = Poly::monic_from_low_index(params, n, low);
        let t = trace_of(&p)?;
        let s = subtrace_of(&p)?;
        tally[t.index() * q + s.index()] += 1;
    }
    Ok(tally)
}

/// P by enumerating the monic irreducibles of degree `n`.
pub fn oracle_p(params: FieldParams, n: usize, budget: &Budget) -> Result<CountTable> {
    Ok(into_table(
        params,
        n,
        CountKind::P,
        irreducible_tally(params, n, budget)?,
    ))
}
