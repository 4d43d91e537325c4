//! The verification grid: every closed form against its brute-force
//! counterpart, plus the identities and basis identities, over all `(q, n)` a
//! budget admits.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::{element_tally, irreducible_tally, tuple_tally, Budget};
use crate::counting::{
    cattell_gf2, classical_count, classical_count_trace_nonzero, f_closed_mutated, f_dispatch,
    f_one, fstar_closed, fstar_recursive_table, p_count, SignFlip,
};
use crate::error::{Error, Result};
use crate::extfield::{coordinate_sums, ExtField, MAX_PACKED_BITS};
use crate::gf2k::{FieldElement, FieldParams};

/// Largest `q^n` for the subtrace-as-trace-sum sweep.
const TRACE_SUM_CAP: u64 = 1 << 12;
/// Largest `q^n` for the self-dual normal basis sweeps.
const NORMAL_CAP: u64 = 1 << 10;
/// Lengths covered by the GF(2) Lyndon cross-check.
const CATTELL_MAX_N: usize = 20;
/// Above this `q` the scaling symmetry is checked for a generator only.
const SCALING_ALL_C: u32 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// First differing entry: `expected` is the brute-force value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub t: u32,
    pub s: u32,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GridPoint {
    pub q: u32,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BudgetSummary {
    pub max_points: u64,
    pub max_poly: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max_k: u32,
    pub budget: BudgetSummary,
    /// Set when the time cap cut the grid short.
    pub time_capped: bool,
    pub grid: Vec<GridPoint>,
    pub checks: Vec<Check>,
    pub totals: Totals,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.totals.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Groups of checks that can be run separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// F against the element sweep, the total, and odd-n F = F*.
    F,
    /// F* closed form and recursion against the tuple sweep.
    Fstar,
    /// P against enumeration, totals, scaling symmetry.
    P,
    /// P over GF(2) against the Lyndon residue-class counts.
    Cattell,
    /// Subtrace identities, self-dual normal bases, power orbits, the F/F* shift.
    Identities,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::F,
        Family::Fstar,
        Family::P,
        Family::Cattell,
        Family::Identities,
    ];
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub max_k: u32,
    pub budget: Budget,
    pub families: Vec<Family>,
    #[doc(hidden)]
    pub mutation: SignFlip,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_k: 16,
            budget: Budget::default(),
            families: Family::ALL.to_vec(),
            mutation: SignFlip::None,
        }
    }
}

/// Runs every check family over the grid admitted by `budget`.
pub fn verify_grid(max_k: u32, budget: &Budget) -> VerifyReport {
    verify_grid_with(&VerifyOptions {
        max_k,
        budget: *budget,
        ..VerifyOptions::default()
    })
}

struct Run {
    checks: Vec<Check>,
    grid: BTreeSet<GridPoint>,
    /// Set once a Möbius division was inexact or a count negative.
    arithmetic_fault: Option<String>,
}

impl Run {
    fn push(&mut self, name: &str, point: Option<(FieldParams, usize)>, outcome: Outcome) {
        if let Some((params, n)) = point {
            self.grid.insert(GridPoint { q: params.q(), n });
        }
        let (status, mismatch, detail) = match outcome {
            Outcome::Pass => (Status::Pass, None, None),
            Outcome::Mismatch(m) => (Status::Fail, Some(m), None),
            Outcome::Detail(d) => (Status::Fail, None, Some(d)),
            Outcome::Error(e) => {
                if matches!(e, Error::InexactDivision { .. } | Error::NegativeCount(_)) {
                    self.arithmetic_fault.get_or_insert_with(|| e.to_string());
                }
                (Status::Fail, None, Some(e.to_string()))
            }
        };
        self.checks.push(Check {
            name: name.to_string(),
            q: point.map(|(p, _)| p.q()),
            n: point.map(|(_, n)| n),
            status,
            mismatch,
            detail,
        });
    }
}

enum Outcome {
    Pass,
    Mismatch(Mismatch),
    Detail(String),
    Error(Error),
}

impl From<Result<Option<Mismatch>>> for Outcome {
    fn from(r: Result<Option<Mismatch>>) -> Self {
        match r {
            Ok(None) => Outcome::Pass,
            Ok(Some(m)) => Outcome::Mismatch(m),
            Err(e) => Outcome::Error(e),
        }
    }
}

fn equal_or(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Detail(detail())
    }
}

fn fits(params: FieldParams, n: usize, cap: u64) -> bool {
    Budget::admit(params, n, cap, "grid").is_ok()
}

fn mismatch(t: usize, s: usize, expected: impl ToString, got: impl ToString) -> Mismatch {
    Mismatch {
        t: t as u32,
        s: s as u32,
        expected: expected.to_string(),
        got: got.to_string(),
    }
}

/// Compares `value(t, s)` with `expected[t*q+s]` row by row; returns the
/// first mismatch and the sum of the computed values.
fn compare<E, F>(
    params: FieldParams,
    expected: &[E],
    value: F,
) -> Result<(Option<Mismatch>, BigInt)>
where
    E: Into<BigInt> + Clone + Sync,
    F: Fn(FieldElement, FieldElement) -> Result<BigInt> + Sync,
{
    let q = params.q() as usize;
    let rows: Vec<(Option<Mismatch>, BigInt)> = (0..q)
        .into_par_iter()
        .map(|t| {
            let mut first = None;
            let mut sum = BigInt::default();
            for s in 0..q {
                let got = value(
                    FieldElement::from_bits(t as u32),
                    FieldElement::from_bits(s as u32),
                )?;
                let want: BigInt = expected[t * q + s].clone().into();
                if first.is_none() && got != want {
                    first = Some(mismatch(t, s, &want, &got));
                }
                sum += got;
            }
            Ok((first, sum))
        })
        .collect::<Result<_>>()?;
    let mut first = None;
    let mut total = BigInt::default();
    for (m, s) in rows {
        if first.is_none() {
            first = m;
        }
        total += s;
    }
    Ok((first, total))
}

fn power_of_q(params: FieldParams, n: usize) -> BigInt {
    BigInt::from(1u8) << (params.k() as usize * n)
}

/// Runs the selected families. Failures are report entries.
pub fn verify_grid_with(options: &VerifyOptions) -> VerifyReport {
    let budget = options.budget;
    let deadline = budget.deadline();
    let mut run = Run {
        checks: Vec::new(),
        grid: BTreeSet::new(),
        arithmetic_fault: None,
    };
    let mut time_capped = false;
    let wants = |f: Family| options.families.contains(&f);
    let fields: Vec<FieldParams> = (1..=options.max_k.min(16))
        .map(|k| FieldParams::new(k, None).expect("default moduli are valid"))
        .collect();

    'grid: for &params in &fields {
        for n in 1.. {
            let in_points = fits(params, n.max(2), budget.max_points);
            let in_poly = n >= 2 && fits(params, n, budget.max_poly);
            let in_identities = n >= 2 && fits(params, n, TRACE_SUM_CAP.min(budget.max_points));
            if !in_points && !in_poly {
                if n >= 2 {
                    break;
                }
                continue;
            }
            if deadline.check().is_err() {
                time_capped = true;
                break 'grid;
            }
            if in_points && wants(Family::F) && params.k() as usize * n <= MAX_PACKED_BITS {
                check_f(&mut run, params, n, options.mutation);
            }
            if in_points && n >= 2 && wants(Family::Fstar) {
                check_fstar(&mut run, params, n);
            }
            if in_poly && wants(Family::P) {
                check_p(&mut run, params, n, &budget);
            }
            if in_identities && wants(Family::Identities) {
                check_identities(&mut run, params, n, &budget);
            }
        }
    }
    if wants(Family::Cattell) && !time_capped {
        check_cattell(&mut run);
    }
    if wants(Family::P) || wants(Family::Cattell) {
        let fault = run.arithmetic_fault.clone();
        run.push(
            "Moebius divisions exact and counts nonnegative",
            None,
            match fault {
                None => Outcome::Pass,
                Some(e) => Outcome::Detail(e),
            },
        );
    }

    let totals = run.checks.iter().fold(Totals::default(), |mut acc, c| {
        match c.status {
            Status::Pass => acc.pass += 1,
            Status::Fail => acc.fail += 1,
        }
        acc
    });
    VerifyReport {
        max_k: options.max_k,
        budget: BudgetSummary {
            max_points: budget.max_points,
            max_poly: budget.max_poly,
        },
        time_capped,
        grid: run.grid.into_iter().collect(),
        checks: run.checks,
        totals,
    }
}

fn check_f(run: &mut Run, params: FieldParams, n: usize, mutation: SignFlip) {
    let point = Some((params, n));
    let tally = match ExtField::new(params, n, None).and_then(|field| element_tally(&field)) {
        Ok(t) => t,
        Err(e) => return run.push("F closed form vs element sweep", point, Outcome::Error(e)),
    };
    let closed = |t, s| match n {
        1 => Ok(f_one(t, s)),
        _ => f_closed_mutated(params, n, t, s, mutation),
    };
    match compare(params, &tally, closed) {
        Ok((m, total)) => {
            run.push("F closed form vs element sweep", point, Ok(m).into());
            let want = power_of_q(params, n);
            run.push(
                "F entries sum to q^n",
                point,
                equal_or(total == want, || format!("sum {total}, q^n = {want}")),
            );
        }
        Err(e) => run.push("F closed form vs element sweep", point, Outcome::Error(e)),
    }
    if n >= 3 && n % 2 == 1 {
        let star: Result<Vec<BigInt>> = params
            .elements()
            .flat_map(|t| {
                params
                    .elements()
                    .map(move |s| fstar_closed(params, n, t, s))
            })
            .collect();
        let outcome = star
            .and_then(|star| compare(params, &star, |t, s| f_dispatch(params, n, t, s)))
            .map(|(m, _)| m);
        run.push("F equals Fstar for odd n", point, outcome.into());
    }
}

fn check_fstar(run: &mut Run, params: FieldParams, n: usize) {
    let point = Some((params, n));
    let tally = tuple_tally(params, n);
    match compare(params, &tally, |t, s| fstar_closed(params, n, t, s)) {
        Ok((m, total)) => {
            run.push("Fstar closed form vs tuple sweep", point, Ok(m).into());
            let want = power_of_q(params, n);
            run.push(
                "Fstar entries sum to q^n",
                point,
                equal_or(total == want, || format!("sum {total}, q^n = {want}")),
            );
        }
        Err(e) => run.push("Fstar closed form vs tuple sweep", point, Outcome::Error(e)),
    }
    let outcome = fstar_recursive_table(params, n).map(|table| {
        let q = params.q() as usize;
        table
            .iter()
            .zip(&tally)
            .position(|(a, &b)| *a != BigInt::from(b))
            .map(|i| mismatch(i / q, i % q, tally[i], &table[i]))
    });
    run.push("Fstar recursion vs tuple sweep", point, outcome.into());
}

fn check_p(run: &mut Run, params: FieldParams, n: usize, budget: &Budget) {
    let point = Some((params, n));
    let q = params.q() as usize;
    let tally = match irreducible_tally(params, n, budget) {
        Ok(t) => t,
        Err(e) => return run.push("P closed form vs enumeration", point, Outcome::Error(e)),
    };
    let compared = compare(params, &tally, |t, s| p_count(params, n, t, s));
    let total = match compared {
        Ok((m, total)) => {
            run.push("P closed form vs enumeration", point, Ok(m).into());
            total
        }
        Err(e) => return run.push("P closed form vs enumeration", point, Outcome::Error(e)),
    };
    match classical_count(params, n) {
        Ok(want) => run.push(
            "P entries sum to the classical count",
            point,
            equal_or(total == want, || format!("sum {total}, classical {want}")),
        ),
        Err(e) => run.push(
            "P entries sum to the classical count",
            point,
            Outcome::Error(e),
        ),
    }
    match classical_count_trace_nonzero(params, n) {
        Ok(want) => {
            let bad = (1..q).find(|&t| {
                let row: u64 = tally[t * q..(t + 1) * q].iter().sum();
                BigInt::from(row) != want
            });
            run.push(
                "P rows with nonzero trace sum to the trace count",
                point,
                equal_or(bad.is_none(), || {
                    format!("row t = {} differs from {want}", bad.unwrap_or(0))
                }),
            );
        }
        Err(e) => run.push(
            "P rows with nonzero trace sum to the trace count",
            point,
            Outcome::Error(e),
        ),
    }

    // x -> c^{-1} x maps trace t to c t and subtrace s to c^2 s.
    let scalars: Vec<FieldElement> = if params.q() <= SCALING_ALL_C {
        params.elements().skip(1).collect()
    } else {
        vec![params.primitive_element()]
    };
    let broken = scalars.par_iter().find_map_first(|&c| {
        let c2 = params.square(c);
        params.elements().find_map(|t| {
            let ct = params.mul(c, t).index();
            params.elements().find_map(|s| {
                let moved = tally[ct * q + params.mul(c2, s).index()];
                let here = tally[t.index() * q + s.index()];
                (moved != here).then(|| (c, mismatch(t.index(), s.index(), here, moved)))
            })
        })
    });
    let outcome = match broken {
        None => Outcome::Pass,
        Some((c, m)) => Outcome::Detail(format!(
            "c = {c}: P(n, t, s) = {} but P(n, ct, c^2 s) = {} at t = {}, s = {}",
            m.expected, m.got, m.t, m.s
        )),
    };
    run.push("P scaling symmetry", point, outcome);
}

fn check_cattell(run: &mut Run) {
    let gf2 = FieldParams::new(1, None).expect("GF(2)");
    for n in 2..=CATTELL_MAX_N {
        let point = Some((gf2, n));
        let outcome = (|| {
            let mut total = BigInt::default();
            for t in 0..2u8 {
                for s in 0..2u8 {
                    let p = p_count(
                        gf2,
                        n,
                        FieldElement::from_bits(t as u32),
                        FieldElement::from_bits(s as u32),
                    )?;
                    let l = cattell_gf2(n as u64, t, s);
                    if p != l {
                        return Ok(Some(mismatch(t as usize, s as usize, l, p)));
                    }
                    total += p;
                }
            }
            let classical = classical_count(gf2, n)?;
            if total != classical {
                return Err(Error::PreconditionViolated(format!(
                    "sum {total} differs from classical count {classical}"
                )));
            }
            Ok(None)
        })();
        run.push(
            "P over GF(2) vs Lyndon residue classes",
            point,
            outcome.into(),
        );
    }
}

fn check_identities(run: &mut Run, params: FieldParams, n: usize, budget: &Budget) {
    let point = Some((params, n));
    let field = match ExtField::new(params, n, None) {
        Ok(f) => f,
        Err(e) => return run.push("subtrace as a sum of traces", point, Outcome::Error(e)),
    };
    let elements: Vec<_> = field.elements().collect();

    let bad = elements.par_iter().find_map_first(|beta| {
        let direct = field.subtrace(beta).ok()?;
        let summed = field.subtrace_from_traces(beta).ok()?;
        (direct != summed).then(|| format!("beta = {beta}: {direct} vs {summed}"))
    });
    run.push(
        "subtrace as a sum of traces",
        point,
        equal_or(bad.is_none(), || bad.unwrap_or_default()),
    );

    if !fits(params, n, NORMAL_CAP.min(budget.max_points)) {
        return;
    }

    let bad = elements.par_iter().find_map_first(|beta| {
        let orbit = field.trace_subtrace_of_power_orbit(beta).ok()?;
        (!orbit.is_consistent()).then(|| format!("beta = {beta}: {orbit:?}"))
    });
    run.push(
        "trace and subtrace from the minimal polynomial",
        point,
        equal_or(bad.is_none(), || bad.unwrap_or_default()),
    );

    let bad = elements.par_iter().find_map_first(|beta| {
        let t = field.trace(beta);
        let s = field.subtrace(beta).ok()?;
        params.elements().find_map(|c| {
            let cb = field.mul(&field.embed(c), beta).ok()?;
            let ok = field.trace(&cb) == params.mul(c, t)
                && field.subtrace(&cb).ok()? == params.mul(params.square(c), s);
            (!ok).then(|| format!("beta = {beta}, c = {c}"))
        })
    });
    run.push(
        "trace linear and subtrace quadratic under scaling",
        point,
        equal_or(bad.is_none(), || bad.unwrap_or_default()),
    );

    let bases = match field.all_self_dual_normal_bases(budget) {
        Ok(b) => b,
        Err(e) => {
            return run.push(
                "self-dual normal basis exists iff 4 does not divide n",
                point,
                Outcome::Error(e),
            )
        }
    };
    run.push(
        "self-dual normal basis exists iff 4 does not divide n",
        point,
        equal_or(bases.is_empty() == n.is_multiple_of(4), || {
            format!("{} bases found for n = {n}", bases.len())
        }),
    );

    let mut epsilons = BTreeSet::new();
    let mut bad = None;
    for theta in &bases {
        let eps = if n % 4 == 2 {
            match field.epsilon_of_basis(theta) {
                Ok(e) => {
                    if params.trace_to_gf2(e) != 1 {
                        bad.get_or_insert(format!("theta = {theta}: epsilon {e} has trace 0"));
                    }
                    epsilons.insert(e);
                    Some(e)
                }
                Err(e) => {
                    bad.get_or_insert(e.to_string());
                    None
                }
            }
        } else {
            None
        };
        let failure = elements.par_iter().find_map_first(|beta| {
            let coords = field.normal_coordinates(beta, theta).ok()?;
            let (sum, pairs) = coordinate_sums(&params, &coords);
            let st = field.subtrace(beta).ok()?;
            let want = match eps {
                Some(e) => params.add(pairs, params.mul(e, params.square(sum))),
                None => pairs,
            };
            let ok = field.trace(beta) == sum && st == want;
            (!ok).then(|| format!("theta = {theta}, beta = {beta}"))
        });
        if let Some(f) = failure {
            bad.get_or_insert(f);
        }
    }
    if !bases.is_empty() {
        run.push(
            "self-dual normal basis coordinate identities",
            point,
            equal_or(bad.is_none(), || bad.unwrap_or_default()),
        );
    }

    // F(n, t, s) = F*(n, t, s + eps t^2) for n = 2 mod 4.
    if !epsilons.is_empty() {
        let outcome = epsilons
            .iter()
            .map(|&eps| {
                let shifted: Result<Vec<BigInt>> = params
                    .elements()
                    .flat_map(|t| {
                        params.elements().map(move |s| {
                            fstar_closed(
                                params,
                                n,
                                t,
                                params.add(s, params.mul(eps, params.square(t))),
                            )
                        })
                    })
                    .collect();
                shifted.and_then(|sh| {
                    compare(params, &sh, |t, s| f_dispatch(params, n, t, s)).map(|(m, _)| m)
                })
            })
            .find(|r| !matches!(r, Ok(None)))
            .unwrap_or(Ok(None));
        run.push(
            "F equals Fstar shifted by epsilon t^2",
            point,
            outcome.into(),
        );
    }
}
