//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::cell::OnceCell;
use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use tracecount::counting::{
    cattell_gf2, classical_count, classical_count_trace_nonzero, p_count, CountKind, CountTable,
    SignFlip,
};
use tracecount::oracle::{
    oracle_f, oracle_p, verify_grid_with, Budget, Family, Status, VerifyOptions, VerifyReport,
};
use tracecount::{FieldElement, FieldParams};

type Outcome = Result<String, String>;

fn gf(k: u32) -> FieldParams {
    FieldParams::new(k, None).unwrap()
}

fn el(i: u32) -> FieldElement {
    FieldElement::from_bits(i)
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tracecount"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf8"),
    )
}

/// Counts from a JSON table printed by the CLI, row-major.
fn cli_table(args: &[&str]) -> Result<Vec<u64>, String> {
    let (code, stdout) = run_cli(args);
    if code != 0 {
        return Err(format!("exit code {code}"));
    }
    let v: serde_json::Value = serde_json::from_str(&stdout).map_err(|e| e.to_string())?;
    v["entries"]
        .as_array()
        .ok_or("no entries")?
        .iter()
        .map(|e| {
            e["count"]
                .as_str()
                .and_then(|c| c.parse().ok())
                .ok_or_else(|| "bad count".to_string())
        })
        .collect()
}

fn as_counts(table: &CountTable) -> Vec<u64> {
    table
        .entries()
        .iter()
        .map(|c| u64::try_from(c).expect("small"))
        .collect()
}

/// The published 4x4 grid over GF(4) = {0, 1, a, a^2} with a^2 = a + 1:
/// `on` where s = t^2 and `off` elsewhere.
fn gf4_grid(on: u64, off: u64) -> Vec<u64> {
    let f = gf(2);
    f.elements()
        .flat_map(|t| {
            f.elements()
                .map(move |s| if s == f.square(t) { on } else { off })
        })
        .collect()
}

fn table_criterion(kind: &str, on: u64, off: u64) -> Outcome {
    let want = gf4_grid(on, off);
    let mut slowest = Duration::ZERO;
    for extra in [&[][..], &["--oracle"][..]] {
        let start = Instant::now();
        let mut args = vec!["table", kind, "--q", "4", "--n", "3", "--format", "json"];
        args.extend_from_slice(extra);
        let got = cli_table(&args)?;
        slowest = slowest.max(start.elapsed());
        if got != want {
            return Err(format!(
                "`{}` gave {got:?}, expected {want:?}",
                args.join(" ")
            ));
        }
    }
    let lib = match kind {
        "F" => oracle_f(gf(2), 3, &Budget::default()),
        _ => oracle_p(gf(2), 3, &Budget::default()),
    }
    .map_err(|e| e.to_string())?;
    if as_counts(&lib) != want {
        return Err("library oracle differs".into());
    }
    if slowest > Duration::from_secs(1) {
        return Err(format!("a table command took {slowest:?}"));
    }
    Ok(format!(
        "4x4 grid exact by closed form and brute force, slowest run {slowest:.2?}"
    ))
}

fn run_family(families: &[Family], budget: Budget, mutation: SignFlip) -> VerifyReport {
    verify_grid_with(&VerifyOptions {
        max_k: 16,
        budget,
        families: families.to_vec(),
        mutation,
    })
}

/// All checks with the given name, keyed by `(q, n)`.
fn checks<'a>(
    report: &'a VerifyReport,
    name: &str,
) -> Vec<(u32, usize, &'a tracecount::oracle::Check)> {
    report
        .checks
        .iter()
        .filter(|c| c.name == name)
        .map(|c| (c.q.unwrap_or(0), c.n.unwrap_or(0), c))
        .collect()
}

/// Every `(q, n)` with `n >= n_min`, `q = 2^k <= 2^16` and `q^n <= cap`.
fn required(cap_bits: u32, n_min: usize) -> BTreeSet<(u32, usize)> {
    let mut out = BTreeSet::new();
    for k in 1..=16u32 {
        for n in n_min.. {
            if k * n as u32 > cap_bits {
                break;
            }
            out.insert((1u32 << k, n));
        }
    }
    out
}

/// All named checks pass and cover `needed`.
fn all_pass(report: &VerifyReport, name: &str, needed: &BTreeSet<(u32, usize)>) -> Outcome {
    let found = checks(report, name);
    if let Some((q, n, c)) = found.iter().find(|(_, _, c)| c.status == Status::Fail) {
        return Err(format!(
            "{name} failed at q={q} n={n}: {}",
            serde_json::to_string(c).unwrap()
        ));
    }
    let covered: BTreeSet<_> = found.iter().map(|&(q, n, _)| (q, n)).collect();
    let missing: Vec<_> = needed.difference(&covered).collect();
    if !missing.is_empty() {
        return Err(format!("{name} did not cover {missing:?}"));
    }
    Ok(format!("{name}: {} grid points", found.len()))
}

fn criterion_3(report: &VerifyReport) -> Outcome {
    let needed = required(20, 2);
    for (q, n) in [(2, 20), (4, 10), (8, 6), (16, 5)] {
        if !needed.contains(&(q, n)) {
            return Err(format!("grid misses ({q}, {n})"));
        }
    }
    all_pass(report, "F closed form vs element sweep", &needed)
}

fn criterion_4(report: &VerifyReport) -> Outcome {
    let needed = required(16, 2);
    let a = all_pass(report, "Fstar closed form vs tuple sweep", &needed)?;
    let b = all_pass(report, "Fstar recursion vs tuple sweep", &needed)?;
    Ok(format!("{a}; {b}"))
}

fn criterion_5(report: &VerifyReport) -> Outcome {
    all_pass(report, "P closed form vs enumeration", &required(22, 2))
}

fn criterion_6() -> Outcome {
    let f = gf(1);
    for n in 2..=20usize {
        let mut total = BigInt::default();
        for t in 0..2u8 {
            for s in 0..2u8 {
                let p = p_count(f, n, el(t as u32), el(s as u32)).map_err(|e| e.to_string())?;
                let c = cattell_gf2(n as u64, t, s);
                if p != c {
                    return Err(format!("n={n} t={t} s={s}: P = {p}, Lyndon sum = {c}"));
                }
                total += p;
            }
        }
        let classical = classical_count(f, n).map_err(|e| e.to_string())?;
        if total != classical {
            return Err(format!("n={n}: sum {total} vs classical {classical}"));
        }
    }
    Ok("n = 2..20, all four (t, s), totals match".into())
}

fn criterion_7(report: &VerifyReport) -> Outcome {
    let trace_sums = all_pass(report, "subtrace as a sum of traces", &required(12, 2))?;
    let small = required(10, 2);
    all_pass(
        report,
        "self-dual normal basis exists iff 4 does not divide n",
        &small,
    )?;
    let with_basis: BTreeSet<_> = small.iter().copied().filter(|&(_, n)| n % 4 != 0).collect();
    all_pass(
        report,
        "self-dual normal basis coordinate identities",
        &with_basis,
    )?;
    let two_mod_four: BTreeSet<_> = small.iter().copied().filter(|&(_, n)| n % 4 == 2).collect();
    all_pass(
        report,
        "F equals Fstar shifted by epsilon t^2",
        &two_mod_four,
    )?;
    all_pass(
        report,
        "trace and subtrace from the minimal polynomial",
        &small,
    )?;
    Ok(format!(
        "{trace_sums}; basis identities on {} grid points",
        with_basis.len()
    ))
}

fn criterion_8(f_report: &VerifyReport, p_report: &VerifyReport) -> Outcome {
    all_pass(f_report, "F entries sum to q^n", &required(20, 2))?;
    let odd: BTreeSet<_> = required(20, 3)
        .into_iter()
        .filter(|&(_, n)| n % 2 == 1)
        .collect();
    all_pass(f_report, "F equals Fstar for odd n", &odd)?;
    let p_grid = required(22, 2);
    all_pass(p_report, "P scaling symmetry", &p_grid)?;
    all_pass(p_report, "P entries sum to the classical count", &p_grid)?;
    all_pass(
        p_report,
        "P rows with nonzero trace sum to the trace count",
        &p_grid,
    )?;
    let exact = checks(p_report, "Moebius divisions exact and counts nonnegative");
    if exact.len() != 1 || exact[0].2.status != Status::Pass {
        return Err("a Moebius division was inexact".into());
    }
    for k in 1..=16 {
        for n in 1..=64 {
            classical_count(gf(k), n).map_err(|e| format!("k={k} n={n}: {e}"))?;
            classical_count_trace_nonzero(gf(k), n).map_err(|e| format!("k={k} n={n}: {e}"))?;
        }
    }
    // Closed-form P for large degrees, where enumeration is out of reach.
    for (k, n) in [(1u32, 40usize), (2, 24), (4, 12), (8, 6)] {
        let table =
            CountTable::closed(gf(k), n, CountKind::P).map_err(|e| format!("k={k} n={n}: {e}"))?;
        let classical = classical_count(gf(k), n).unwrap();
        if table.total() != classical {
            return Err(format!("k={k} n={n}: closed P total differs"));
        }
    }
    Ok("sums, scaling, odd-n F = F*, exact divisions".into())
}

fn criterion_9() -> Outcome {
    let mut witnesses = Vec::new();
    for flip in SignFlip::BRANCHES {
        let report = run_family(&[Family::F], Budget::default(), flip);
        let caught = checks(&report, "F closed form vs element sweep")
            .into_iter()
            .find_map(|(q, n, c)| c.mismatch.as_ref().map(|m| (q, n, m.clone())));
        match caught {
            Some((q, n, m)) => witnesses.push(format!(
                "{flip:?}: q={q} n={n} t={} s={} expected {} got {}",
                m.t, m.s, m.expected, m.got
            )),
            None => return Err(format!("{flip:?} went unnoticed")),
        }
    }
    Ok(witnesses.join("; "))
}

type Criterion<'a> = (usize, &'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    if std::env::args().any(|a| a == "--list") {
        for i in 1..=9 {
            println!("criterion_{i}: test");
        }
        return;
    }
    let wanted = |i: usize| {
        filter.is_empty()
            || filter
                .iter()
                .any(|f| format!("criterion_{i}").contains(f.as_str()))
    };

    let default = Budget::default();
    let f_report = OnceCell::new();
    let fstar_report = OnceCell::new();
    let p_report = OnceCell::new();
    let identity_report = OnceCell::new();
    let f = || f_report.get_or_init(|| run_family(&[Family::F], default, SignFlip::None));
    let fstar =
        || fstar_report.get_or_init(|| run_family(&[Family::Fstar], default, SignFlip::None));
    let p = || p_report.get_or_init(|| run_family(&[Family::P], default, SignFlip::None));
    let identities = || {
        identity_report.get_or_init(|| run_family(&[Family::Identities], default, SignFlip::None))
    };

    let criteria: Vec<Criterion<'_>> = vec![
        (
            1,
            "F over GF(4), n = 3 matches the reference grid",
            Box::new(|| table_criterion("F", 7, 3)),
        ),
        (
            2,
            "P over GF(4), n = 3 matches the reference grid",
            Box::new(|| table_criterion("P", 2, 1)),
        ),
        (
            3,
            "closed-form F vs element sweep, q^n <= 2^20",
            Box::new(|| criterion_3(f())),
        ),
        (
            4,
            "Fstar closed = recursion = tuple sweep, q^n <= 2^16",
            Box::new(|| criterion_4(fstar())),
        ),
        (
            5,
            "P via Moebius inversion vs enumeration, q^n <= 2^22",
            Box::new(|| criterion_5(p())),
        ),
        (
            6,
            "GF(2) Lyndon residue classes, n = 2..20",
            Box::new(criterion_6),
        ),
        (
            7,
            "identity suite (subtrace sums, self-dual normal bases)",
            Box::new(|| criterion_7(identities())),
        ),
        (
            8,
            "count identities and exact arithmetic",
            Box::new(|| criterion_8(f(), p())),
        ),
        (
            9,
            "mutation sensitivity of every sign branch",
            Box::new(criterion_9),
        ),
    ];

    let mut failed = 0;
    for (i, title, check) in &criteria {
        if !wanted(*i) {
            continue;
        }
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {i}: PASS  {title} [{elapsed:.1?}] {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {i}: FAIL  {title} [{elapsed:.1?}] {detail}");
            }
        }
    }
    if failed > 0 {
        println!("acceptance: {failed} criterion(s) failed");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
