//! Full `(t, s)` grids of counts and their text forms.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::closed::{f_dispatch, fstar_closed, p_count};
use crate::error::{Error, Result};
use crate::gf2k::{FieldElement, FieldParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CountKind {
    F,
    Fstar,
    P,
}

impl CountKind {
    pub fn name(self) -> &'static str {
        match self {
            CountKind::F => "F",
            CountKind::Fstar => "Fstar",
            CountKind::P => "P",
        }
    }
}

impl fmt::Display for CountKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CountKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F" | "f" => Ok(CountKind::F),
            "Fstar" | "fstar" | "F*" => Ok(CountKind::Fstar),
            "P" | "p" => Ok(CountKind::P),
            _ => Err(Error::Parse(format!("unknown count kind {s:?}"))),
        }
    }
}

/// Counts for every `(t, s)`, stored row-major at `t * q + s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    params: FieldParams,
    n: usize,
    kind: CountKind,
    entries: Vec<BigInt>,
}

#[derive(Serialize)]
struct JsonEntry {
    t: u32,
    s: u32,
    count: String,
}

#[derive(Serialize)]
struct JsonTable<'a> {
    q: u32,
    k: u32,
    n: usize,
    kind: &'a str,
    modulus: u32,
    entries: Vec<JsonEntry>,
}

impl CountTable {
    pub fn from_entries(
        params: FieldParams,
        n: usize,
        kind: CountKind,
        entries: Vec<BigInt>,
    ) -> Result<Self> {
        let q = params.q() as usize;
        if entries.len() != q * q {
            return Err(Error::PreconditionViolated(format!(
                "expected {} entries, got {}",
                q * q,
                entries.len()
            )));
        }
        Ok(CountTable {
            params,
            n,
            kind,
            entries,
        })
    }

    /// Closed-form table for `kind` (F uses the n = 1 convention).
    pub fn closed(params: FieldParams, n: usize, kind: CountKind) -> Result<Self> {
        let q = params.q();
        let rows: Vec<Vec<BigInt>> = (0..q)
            .into_par_iter()
            .map(|t| {
                let t = FieldElement::from_bits(t);
                params
                    .elements()
                    .map(|s| match kind {
                        CountKind::F => f_dispatch(params, n, t, s),
                        CountKind::Fstar => fstar_closed(params, n, t, s),
                        CountKind::P => p_count(params, n, t, s),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Self::from_entries(params, n, kind, rows.into_iter().flatten().collect())
    }

    pub fn params(&self) -> FieldParams {
        self.params
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> CountKind {
        self.kind
    }

    pub fn get(&self, t: FieldElement, s: FieldElement) -> &BigInt {
        &self.entries[t.index() * self.params.q() as usize + s.index()]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// `(t, s, count)` in index order.
    pub fn iter(&self) -> impl Iterator<Item = (FieldElement, FieldElement, &BigInt)> {
        let q = self.params.q() as usize;
        self.entries.iter().enumerate().map(move |(i, c)| {
            (
                FieldElement::from_bits((i / q) as u32),
                FieldElement::from_bits((i % q) as u32),
                c,
            )
        })
    }

    pub fn total(&self) -> BigInt {
        self.entries.iter().sum()
    }

    /// First entry where the tables differ, as `(t, s, self, other)`.
    pub fn first_mismatch(
        &self,
        other: &CountTable,
    ) -> Option<(FieldElement, FieldElement, BigInt, BigInt)> {
        self.iter()
            .zip(other.entries.iter())
            .find(|((_, _, a), b)| a != b)
            .map(|((t, s, a), b)| (t, s, a.clone(), b.clone()))
    }

    pub fn to_json(&self) -> String {
        let table = JsonTable {
            q: self.params.q(),
            k: self.params.k(),
            n: self.n,
            kind: self.kind.name(),
            modulus: self.params.modulus(),
            entries: self
                .iter()
                .map(|(t, s, c)| JsonEntry {
                    t: t.bits(),
                    s: s.bits(),
                    count: c.to_string(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&table).expect("serializable")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,s,count\n");
        for (t, s, c) in self.iter() {
            out.push_str(&format!("{t},{s},{c}\n"));
        }
        out
    }

    /// Grid with rows `t` and columns `s`, both in index order.
    pub fn to_pretty(&self) -> String {
        let q = self.params.q() as usize;
        let width = self
            .entries
            .iter()
            .map(|c| c.to_string().len())
            .chain(std::iter::once(q.to_string().len()))
            .max()
            .unwrap_or(1);
        let label = (q - 1).to_string().len().max(3);
        let mut out = format!(
            "{}({}, t, s) over GF({}), modulus {:#x}\n",
            self.kind,
            self.n,
            q,
            self.params.modulus()
        );
        out.push_str(&format!("{:>label$} |", "t\\s"));
        for s in 0..q {
            out.push_str(&format!(" {s:>width$}"));
        }
        out.push('\n');
        out.push_str(&"-".repeat(label + 2 + q * (width + 1)));
        out.push('\n');
        for t in 0..q {
            out.push_str(&format!("{t:>label$} |"));
            for c in &self.entries[t * q..(t + 1) * q] {
                out.push_str(&format!(" {:>width$}", c.to_string()));
            }
            out.push('\n');
        }
        out
    }
}
