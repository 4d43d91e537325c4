//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget
//! exceeded.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::counting::{f_dispatch, fstar_closed, p_count, CountKind, CountTable};
use crate::error::{Error, Result};
use crate::extfield::ExtField;
use crate::gf2k::{parse_u64, FieldElement, FieldParams};
use crate::oracle::{oracle_f_in, oracle_fstar, oracle_p, verify_grid_with, Budget, VerifyOptions};
use crate::polyring::{enumerate_monic_irreducibles, Poly};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "tracecount",
    version,
    about = "Count elements and irreducible polynomials over GF(2^k) by trace and subtrace",
    after_help = "Elements of GF(q) are given as decimal (or 0x-prefixed) indices: the bits of \
                  the index are the coefficients of the element in the polynomial basis. \
                  Use `show-elements` to list the correspondence."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Base field size q = 2^k.
    #[arg(long, global = true, conflicts_with = "k")]
    pub q: Option<String>,
    /// Base field degree k (1..=16); defaults to 1.
    #[arg(long, global = true)]
    pub k: Option<u32>,
    /// Binary modulus of GF(2^k) as an integer, e.g. 0x13 for x^4+x+1.
    #[arg(long, global = true)]
    pub modulus: Option<String>,
    /// Monic irreducible of degree n over GF(q) defining GF(q^n) for
    /// element sweeps, e.g. "x^3+x+1" or "[1,1,0,1]".
    #[arg(long, global = true)]
    pub ext_modulus: Option<String>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for the sweeps.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Cap on q^n for element and tuple sweeps.
    #[arg(long, global = true)]
    pub max_points: Option<u64>,
    /// Cap on q^n for polynomial enumeration.
    #[arg(long, global = true)]
    pub max_poly: Option<u64>,
    /// Wall-clock cap in seconds for `verify`.
    #[arg(long, global = true)]
    pub time_cap: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    #[value(name = "F")]
    F,
    #[value(name = "Fstar")]
    Fstar,
    #[value(name = "P")]
    P,
}

impl From<KindArg> for CountKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::F => CountKind::F,
            KindArg::Fstar => CountKind::Fstar,
            KindArg::P => CountKind::P,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One count F(n,t,s), Fstar(n,t,s) or P(n,t,s).
    Count {
        #[arg(value_enum)]
        kind: KindArg,
        /// Degree n of the extension or of the polynomials
        #[arg(long)]
        n: usize,
        /// Trace, as an element index.
        #[arg(long)]
        t: String,
        /// Subtrace, as an element index.
        #[arg(long)]
        s: String,
        /// Also compute the brute-force value.
        #[arg(long)]
        oracle: bool,
    },
    /// The full (t, s) table, rows t and columns s.
    Table {
        #[arg(value_enum)]
        kind: KindArg,
        /// Degree n of the extension or of the polynomials
        #[arg(long)]
        n: usize,
        /// Print the brute-force table instead of the closed form.
        #[arg(long)]
        oracle: bool,
    },
    /// Monic irreducibles of degree n, optionally with given trace and
    /// subtrace.
    Enumerate {
        /// Degree n of the extension or of the polynomials
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        s: Option<String>,
    },
    /// Check every closed form against brute force; prints a JSON report.
    Verify {
        /// Largest base field degree in the grid.
        #[arg(long, default_value_t = 16)]
        max_k: u32,
    },
    /// Index to polynomial correspondence for the active modulus.
    ShowElements,
}

/// What a command printed and how it exits.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn exit_code(e: &Error) -> i32 {
    if e.is_budget() {
        EXIT_BUDGET
    } else {
        EXIT_USAGE
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Output {
                    stdout: text,
                    ..Output::default()
                }
            } else {
                Output {
                    stderr: text,
                    code,
                    ..Output::default()
                }
            }
        }
    }
}

pub fn run(cli: Cli) -> Output {
    let mut out = Output::default();
    let threads = cli.global.threads;
    let result = match threads {
        Some(0) => Err(Error::Parse("--threads must be positive".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, &mut out)),
            Err(e) => Err(Error::PreconditionViolated(e.to_string())),
        },
        None => dispatch(&cli, &mut out),
    };
    if let Err(e) = result {
        let _ = writeln!(out.stderr, "error: {e}");
        out.code = exit_code(&e);
    }
    out
}

struct Context {
    params: FieldParams,
    budget: Budget,
    format: Format,
}

impl Context {
    fn new(g: &GlobalArgs, out: &mut Output) -> Result<Self> {
        let modulus = g
            .modulus
            .as_deref()
            .map(|m| {
                let v = parse_u64(m)?;
                u32::try_from(v).map_err(|_| Error::BadModulus(m.to_string()))
            })
            .transpose()?;
        let params = match (&g.q, g.k) {
            (Some(q), _) => FieldParams::with_q(parse_u64(q)?, modulus)?,
            (None, Some(k)) => FieldParams::new(k, modulus)?,
            (None, None) => FieldParams::new(1, modulus)?,
        };
        let defaults = Budget::default();
        let budget = Budget {
            max_points: g.max_points.unwrap_or(defaults.max_points),
            max_poly: g.max_poly.unwrap_or(defaults.max_poly),
            time_cap: g.time_cap,
        };
        budget.validate()?;
        if budget.max_points > defaults.max_points || budget.max_poly > defaults.max_poly {
            let _ = writeln!(
                out.stderr,
                "note: budget raised above the defaults (max-points {}, max-poly {})",
                defaults.max_points, defaults.max_poly
            );
        }
        Ok(Context {
            params,
            budget,
            format: g.format.unwrap_or(Format::Pretty),
        })
    }

    fn element(&self, text: &str) -> Result<FieldElement> {
        self.params.parse_element(text)
    }

    fn modulus_line(&self) -> String {
        format!(
            "GF({}) with modulus {:#x}",
            self.params.q(),
            self.params.modulus()
        )
    }

    fn ext_field(&self, g: &GlobalArgs, n: usize) -> Result<ExtField> {
        let modulus = g
            .ext_modulus
            .as_deref()
            .map(|text| Poly::parse(self.params, text))
            .transpose()?;
        ExtField::new(self.params, n, modulus)
    }
}

fn dispatch(cli: &Cli, out: &mut Output) -> Result<()> {
    let g = &cli.global;
    if let Command::Verify { .. } = cli.command {
        if matches!(g.format, Some(Format::Csv) | Some(Format::Pretty)) {
            return Err(Error::Parse("the verify report is JSON only".into()));
        }
    }
    let ctx = Context::new(g, out)?;
    match &cli.command {
        Command::Count {
            kind,
            n,
            t,
            s,
            oracle,
        } => cmd_count(&ctx, g, (*kind).into(), *n, t, s, *oracle, out),
        Command::Table { kind, n, oracle } => cmd_table(&ctx, g, (*kind).into(), *n, *oracle, out),
        Command::Enumerate { n, t, s } => cmd_enumerate(&ctx, *n, t.as_deref(), s.as_deref(), out),
        Command::Verify { max_k } => cmd_verify(&ctx, *max_k, out),
        Command::ShowElements => cmd_show_elements(&ctx, out),
    }
}

fn check_n(kind: CountKind, n: usize) -> Result<()> {
    let need = if kind == CountKind::F { 1 } else { 2 };
    if n < need {
        return Err(Error::DegreeTooSmall { got: n, need });
    }
    Ok(())
}

fn oracle_table(ctx: &Context, g: &GlobalArgs, kind: CountKind, n: usize) -> Result<CountTable> {
    match kind {
        CountKind::F => {
            crate::oracle::Budget::admit(
                ctx.params,
                n.max(2),
                ctx.budget.max_points,
                "element sweep",
            )?;
            oracle_f_in(&ctx.ext_field(g, n)?, &ctx.budget)
        }
        CountKind::Fstar => oracle_fstar(ctx.params, n, &ctx.budget),
        CountKind::P => oracle_p(ctx.params, n, &ctx.budget),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_count(
    ctx: &Context,
    g: &GlobalArgs,
    kind: CountKind,
    n: usize,
    t: &str,
    s: &str,
    oracle: bool,
    out: &mut Output,
) -> Result<()> {
    check_n(kind, n)?;
    let (t, s) = (ctx.element(t)?, ctx.element(s)?);
    let p = ctx.params;
    let count = match kind {
        CountKind::F => f_dispatch(p, n, t, s)?,
        CountKind::Fstar => fstar_closed(p, n, t, s)?,
        CountKind::P => p_count(p, n, t, s)?,
    };
    let brute = if oracle {
        Some(oracle_table(ctx, g, kind, n)?.get(t, s).clone())
    } else {
        None
    };
    let matched = brute.as_ref().map(|b| *b == count);
    match ctx.format {
        Format::Json => {
            let mut v = json!({
                "q": p.q(),
                "k": p.k(),
                "modulus": p.modulus(),
                "n": n,
                "kind": kind.name(),
                "t": t.bits(),
                "s": s.bits(),
                "count": count.to_string(),
            });
            if let (Some(b), Some(m)) = (&brute, matched) {
                v["oracle"] = json!(b.to_string());
                v["match"] = json!(m);
            }
            out.stdout = format!("{}\n", serde_json::to_string_pretty(&v).expect("json"));
        }
        Format::Csv => {
            let _ = writeln!(out.stderr, "# {}", ctx.modulus_line());
            match (&brute, matched) {
                (Some(b), Some(m)) => {
                    out.stdout = format!(
                        "kind,n,t,s,count,oracle,match\n{kind},{n},{t},{s},{count},{b},{m}\n"
                    )
                }
                _ => out.stdout = format!("kind,n,t,s,count\n{kind},{n},{t},{s},{count}\n"),
            }
        }
        Format::Pretty => {
            let _ = writeln!(out.stderr, "# {}", ctx.modulus_line());
            out.stdout = format!("{count}\n");
            if let (Some(b), Some(m)) = (&brute, matched) {
                let _ = writeln!(out.stdout, "oracle {b}\nmatch {m}");
            }
        }
    }
    if matched == Some(false) {
        out.code = EXIT_VERIFY_FAILED;
    }
    Ok(())
}

fn cmd_table(
    ctx: &Context,
    g: &GlobalArgs,
    kind: CountKind,
    n: usize,
    oracle: bool,
    out: &mut Output,
) -> Result<()> {
    check_n(kind, n)?;
    let closed = CountTable::closed(ctx.params, n, kind)?;
    let table = if oracle {
        let brute = oracle_table(ctx, g, kind, n)?;
        if let Some((t, s, want, got)) = brute.first_mismatch(&closed) {
            let _ = writeln!(
                out.stderr,
                "mismatch at t={t} s={s}: brute force {want}, closed form {got}"
            );
            out.code = EXIT_VERIFY_FAILED;
        }
        brute
    } else {
        closed
    };
    out.stdout = match ctx.format {
        Format::Json => table.to_json() + "\n",
        Format::Csv => {
            let _ = writeln!(out.stderr, "# {}", ctx.modulus_line());
            table.to_csv()
        }
        Format::Pretty => table.to_pretty(),
    };
    Ok(())
}

#[derive(Serialize)]
struct EnumerationJson {
    q: u32,
    k: u32,
    modulus: u32,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<u32>,
    polynomials: Vec<String>,
    count: usize,
}

fn cmd_enumerate(
    ctx: &Context,
    n: usize,
    t: Option<&str>,
    s: Option<&str>,
    out: &mut Output,
) -> Result<()> {
    let t = t.map(|t| ctx.element(t)).transpose()?;
    let s = s.map(|s| ctx.element(s)).transpose()?;
    if (t.is_some() || s.is_some()) && n < 2 {
        return Err(Error::DegreeTooSmall { got: n, need: 2 });
    }
    let polys: Vec<Poly> = enumerate_monic_irreducibles(ctx.params, n, None, &ctx.budget)?
        .into_iter()
        .filter(|p| t.is_none_or(|t| p.coeff(n - 1) == t))
        .filter(|p| s.is_none_or(|s| p.coeff(n - 2) == s))
        .collect();
    match ctx.format {
        Format::Json => {
            let doc = EnumerationJson {
                q: ctx.params.q(),
                k: ctx.params.k(),
                modulus: ctx.params.modulus(),
                n,
                t: t.map(|t| t.bits()),
                s: s.map(|s| s.bits()),
                polynomials: polys.iter().map(|p| p.to_string()).collect(),
                count: polys.len(),
            };
            out.stdout = serde_json::to_string_pretty(&doc).expect("json") + "\n";
        }
        Format::Csv => {
            let _ = writeln!(out.stderr, "# {}", ctx.modulus_line());
            out.stdout = String::from("polynomial\n");
            for p in &polys {
                let _ = writeln!(out.stdout, "{p}");
            }
        }
        Format::Pretty => {
            let _ = writeln!(out.stdout, "# {}", ctx.modulus_line());
            for p in &polys {
                let _ = writeln!(out.stdout, "{p}");
            }
            let _ = writeln!(out.stdout, "count {}", polys.len());
        }
    }
    Ok(())
}

fn cmd_verify(ctx: &Context, max_k: u32, out: &mut Output) -> Result<()> {
    if !(1..=16).contains(&max_k) {
        return Err(Error::UnsupportedDegree(max_k));
    }
    let report = verify_grid_with(&VerifyOptions {
        max_k,
        budget: ctx.budget,
        ..VerifyOptions::default()
    });
    out.stdout = report.to_json() + "\n";
    if !report.passed() {
        out.code = EXIT_VERIFY_FAILED;
    }
    Ok(())
}

fn cmd_show_elements(ctx: &Context, out: &mut Output) -> Result<()> {
    let p = ctx.params;
    match ctx.format {
        Format::Json => {
            let elements: Vec<_> = p
                .elements()
                .map(|e| json!({"index": e.bits(), "element": p.pretty(e)}))
                .collect();
            let doc = json!({"q": p.q(), "k": p.k(), "modulus": p.modulus(), "elements": elements});
            out.stdout = serde_json::to_string_pretty(&doc).expect("json") + "\n";
        }
        Format::Csv => {
            let _ = writeln!(out.stderr, "# {}", ctx.modulus_line());
            out.stdout = String::from("index,element\n");
            for e in p.elements() {
                let _ = writeln!(out.stdout, "{},{}", e, p.pretty(e));
            }
        }
        Format::Pretty => {
            let _ = writeln!(out.stdout, "# {}, a = class of x", ctx.modulus_line());
            let width = (p.q() - 1).to_string().len();
            for e in p.elements() {
                let _ = writeln!(out.stdout, "{:>width$}  {}", e, p.pretty(e));
            }
        }
    }
    Ok(())
}
