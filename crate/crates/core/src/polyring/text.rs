//! Text forms: `x^3+2*x^2+3*x+1` and the compact ascending index list
//! `[1,3,2,1]`.

use std::fmt;

use super::Poly;
use crate::error::{Error, Result};
use crate::gf2k::{parse_u64, FieldParams};

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let coeff = c.bits();
            match (i, coeff) {
                (0, _) => write!(f, "{coeff}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{coeff}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                (_, _) => write!(f, "{coeff}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    /// Compact ascending index form, e.g. `[1,1,0,0,1]`.
    pub fn to_index_list(&self) -> String {
        let parts: Vec<String> = self.coeffs().iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    /// Parses either text form.
    pub fn parse(params: FieldParams, text: &str) -> Result<Poly> {
        let t = text.trim();
        if let Some(inner) = t.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("unterminated list {t:?}")))?;
            let indices = inner
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(parse_u64)
                .collect::<Result<Vec<_>>>()?;
            return Poly::from_indices(params, &indices);
        }
        let compact: String = t.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut coeffs: Vec<u64> = Vec::new();
        for term in compact.split('+') {
            let (coeff, exp) = parse_term(term)?;
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, 0);
            }
            coeffs[exp] ^= params.element(coeff)?.bits() as u64;
        }
        Poly::from_indices(params, &coeffs)
    }
}

fn parse_term(term: &str) -> Result<(u64, usize)> {
    let bad = || Error::Parse(format!("bad term {term:?}"));
    if term.is_empty() {
        return Err(bad());
    }
    let (coeff_part, x_part) = match term.find('x') {
        None => return Ok((parse_u64(term)?, 0)),
        Some(pos) => (&term[..pos], &term[pos + 1..]),
    };
    let coeff = match coeff_part {
        "" => 1,
        c => parse_u64(c.strip_suffix('*').ok_or_else(bad)?)?,
    };
    let exp = match x_part {
        "" => 1,
        e => e
            .strip_prefix('^')
            .ok_or_else(bad)?
            .parse::<usize>()
            .map_err(|_| bad())?,
    };
    Ok((coeff, exp))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        let g2 = FieldParams::new(1, None).unwrap();
        let p = Poly::from_indices(g2, &[1, 1, 0, 0, 1]).unwrap();
        assert_eq!(p.to_string(), "x^4+x+1");
        assert_eq!(p.to_index_list(), "[1,1,0,0,1]");
        let g4 = FieldParams::new(2, None).unwrap();
        let p = Poly::from_indices(g4, &[1, 3, 2, 1]).unwrap();
        assert_eq!(p.to_string(), "x^3+2*x^2+3*x+1");
        assert_eq!(Poly::zero(g4).to_string(), "0");
    }

    #[test]
    fn parse_forms() {
        let g4 = FieldParams::new(2, None).unwrap();
        let a = Poly::parse(g4, "x^3+2*x^2+3*x+1").unwrap();
        let b = Poly::parse(g4, "[1, 3, 2, 1]").unwrap();
        assert_eq!(a, b);
        assert_eq!(Poly::parse(g4, &a.to_string()).unwrap(), a);
        assert!(Poly::parse(g4, "x^2+5").is_err());
        assert!(Poly::parse(g4, "x^^2").is_err());
        assert!(Poly::parse(g4, "[1,2").is_err());
        assert!(Poly::parse(g4, "").is_err());
    }
}
