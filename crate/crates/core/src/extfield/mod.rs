//! The extension GF(q^n) over GF(q) in a polynomial basis: Frobenius, tower
//! traces, and the element trace and subtrace.

mod normal;
mod packed;

pub use normal::coordinate_sums;
pub use packed::{PackedExtField, MAX_PACKED_BITS};

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2k::{FieldElement, FieldParams};
use crate::oracle::Budget;
use crate::polyring::{is_irreducible, minimal_polynomial, Poly};

/// Coordinates of an element of GF(q^n) in the basis `1, x, ..., x^(n-1)`
/// modulo the extension modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtElement {
    coeffs: Vec<FieldElement>,
}

impl ExtElement {
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// GF(q^n) = GF(q)[x] / (modulus).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtField {
    base: FieldParams,
    n: usize,
    modulus: Poly,
    /// `x^(i*q) mod modulus` for `i < n`; the Frobenius matrix by columns.
    frobenius_columns: Vec<ExtElement>,
}

/// Trace and subtrace of `beta` next to the values predicted from its
/// minimal polynomial `p` of degree `n/d`: `t = d*Tr(p)` and
/// `s = d*St(p) + C(d,2)*Tr(p)^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerOrbit {
    pub trace: FieldElement,
    pub subtrace: FieldElement,
    pub d: usize,
    pub min_poly: Poly,
    pub predicted_trace: FieldElement,
    pub predicted_subtrace: FieldElement,
}

impl PowerOrbit {
    pub fn is_consistent(&self) -> bool {
        self.trace == self.predicted_trace && self.subtrace == self.predicted_subtrace
    }
}

impl ExtField {
    /// Builds GF(q^n). Without a modulus, the monic irreducible of degree
    /// `n` with the least packed index is used.
    pub fn new(base: FieldParams, n: usize, modulus: Option<Poly>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DegreeTooSmall { got: 0, need: 1 });
        }
        let modulus = match modulus {
            Some(m) => {
                if m.params() != base {
                    return Err(Error::ParamsMismatch);
                }
                if m.degree() != Some(n) || !m.is_monic() {
                    return Err(Error::BadModulus(m.to_string()));
                }
                if !is_irreducible(&m) {
                    return Err(Error::ReducibleModulus(m.to_string()));
                }
                m
            }
            None => Self::default_modulus(base, n, &Budget::default())?,
        };
        let mut field = ExtField {
            base,
            n,
            modulus,
            frobenius_columns: Vec::new(),
        };
        let xq = field.pow(&field.x(), base.q() as u64);
        let mut column = field.one();
        let mut columns = Vec::with_capacity(n);
        for _ in 0..n {
            columns.push(column.clone());
            column = field.mul_raw(&column, &xq);
        }
        field.frobenius_columns = columns;
        Ok(field)
    }

    /// Least-index monic irreducible of degree `n`, scanning at most
    /// `budget.max_poly` candidates.
    pub fn default_modulus(base: FieldParams, n: usize, budget: &Budget) -> Result<Poly> {
        let bits = base.k() as usize * n;
        let total: u128 = if bits >= 127 {
            u128::MAX
        } else {
            1u128 << bits
        };
        let limit = total.min(budget.max_poly as u128).min(u64::MAX as u128) as u64;
        for low in 0..limit {
            let digits = n.min(64 / base.k() as usize);
            let mut coeffs = Poly::monic_from_low_index(base, digits, low)
                .coeffs()
                .to_vec();
            coeffs.truncate(digits);
            coeffs.resize(n, FieldElement::ZERO);
            coeffs.push(FieldElement::ONE);
            let candidate = Poly::new(base, coeffs);
            if is_irreducible(&candidate) {
                return Ok(candidate);
            }
        }
        Err(Error::BudgetExceeded {
            what: "default modulus search",
            needed: total,
            cap: budget.max_poly as u128,
        })
    }

    pub fn base(&self) -> FieldParams {
        self.base
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// `q^n`, when it fits.
    pub fn size(&self) -> Option<u64> {
        let bits = self.base.k() as usize * self.n;
        (bits < 64).then(|| 1u64 << bits)
    }

    pub fn zero(&self) -> ExtElement {
        ExtElement {
            coeffs: vec![FieldElement::ZERO; self.n],
        }
    }

    pub fn one(&self) -> ExtElement {
        self.embed(FieldElement::ONE)
    }

    pub fn embed(&self, c: FieldElement) -> ExtElement {
        let mut e = self.zero();
        e.coeffs[0] = c;
        e
    }

    /// The class of `x`, i.e. a root of the modulus.
    pub fn x(&self) -> ExtElement {
        let p = Poly::x(self.base)
            .rem(&self.modulus)
            .expect("nonzero modulus");
        self.reduce_poly(&p)
    }

    fn reduce_poly(&self, p: &Poly) -> ExtElement {
        let mut e = self.zero();
        for (i, &c) in p.coeffs().iter().enumerate() {
            e.coeffs[i] = c;
        }
        e
    }

    pub fn from_coeffs(&self, coeffs: Vec<FieldElement>) -> Result<ExtElement> {
        if coeffs.len() != self.n {
            return Err(Error::ParamsMismatch);
        }
        for c in &coeffs {
            self.base.element(c.bits() as u64)?;
        }
        Ok(ExtElement { coeffs })
    }

    /// Element whose coordinates are the base-q digits of `index`.
    pub fn from_index(&self, index: u64) -> Result<ExtElement> {
        let k = self.base.k() as usize;
        if let Some(size) = self.size() {
            if index >= size {
                return Err(Error::InvalidElement { index, q: size });
            }
        }
        let mask = (self.base.q() - 1) as u64;
        let coeffs = (0..self.n)
            .map(|i| {
                let shift = k * i;
                let digit = if shift < 64 {
                    (index >> shift) & mask
                } else {
                    0
                };
                FieldElement::from_bits(digit as u32)
            })
            .collect();
        Ok(ExtElement { coeffs })
    }

    /// Packed index `sum c_i q^i`, when it fits in 64 bits.
    pub fn index(&self, e: &ExtElement) -> Option<u64> {
        let k = self.base.k() as usize;
        self.size()?;
        Some(
            e.coeffs
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, c)| acc | ((c.bits() as u64) << (k * i))),
        )
    }

    /// Parses the `[c0,c1,...]` form.
    pub fn parse_element(&self, text: &str) -> Result<ExtElement> {
        let p = Poly::parse(self.base, text)?;
        if p.degree().is_some_and(|d| d >= self.n) {
            return Err(Error::Parse(format!("{text:?} has too many coordinates")));
        }
        Ok(self.reduce_poly(&p))
    }

    /// All `q^n` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = ExtElement> + '_ {
        let size = self.size().expect("field too large to enumerate");
        (0..size).map(move |i| self.from_index(i).expect("in range"))
    }

    fn check(&self, e: &ExtElement) -> Result<()> {
        if e.coeffs.len() != self.n {
            return Err(Error::ParamsMismatch);
        }
        Ok(())
    }

    pub fn is_zero(&self, e: &ExtElement) -> bool {
        e.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, a: &ExtElement, b: &ExtElement) -> Result<ExtElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_raw(a, b))
    }

    fn add_raw(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        ExtElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| self.base.add(x, y))
                .collect(),
        }
    }

    pub fn mul(&self, a: &ExtElement, b: &ExtElement) -> Result<ExtElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_raw(a, b))
    }

    fn mul_raw(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let f = self.base;
        let n = self.n;
        let mut prod = vec![FieldElement::ZERO; 2 * n - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = f.add(prod[i + j], f.mul(x, y));
            }
        }
        let m = self.modulus.coeffs();
        for i in (n..2 * n - 1).rev() {
            let c = prod[i];
            if c.is_zero() {
                continue;
            }
            // x^i = x^(i-n) * (x^n) and x^n = -(m_0 + ... + m_{n-1} x^(n-1)).
            for (j, &mj) in m[..n].iter().enumerate() {
                prod[i - n + j] = f.add(prod[i - n + j], f.mul(c, mj));
            }
        }
        prod.truncate(n);
        ExtElement { coeffs: prod }
    }

    pub fn square(&self, a: &ExtElement) -> ExtElement {
        self.mul_raw(a, a)
    }

    pub fn pow(&self, a: &ExtElement, mut e: u64) -> ExtElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(&acc, &base);
            }
            base = self.square(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &ExtElement) -> Result<ExtElement> {
        self.check(a)?;
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        // a^-1 = a^(q + ... + q^(n-1)) / N(a) with the norm N(a) in GF(q).
        let mut others = self.one();
        let mut conj = a.clone();
        for _ in 1..self.n {
            conj = self.frobenius_raw(&conj);
            others = self.mul_raw(&others, &conj);
        }
        let norm = self.to_base(&self.mul_raw(&others, a))?;
        Ok(self.mul_raw(&others, &self.embed(self.base.inv(norm)?)))
    }

    /// `beta^q`, applied as a GF(q)-linear map.
    pub fn frobenius(&self, beta: &ExtElement) -> Result<ExtElement> {
        self.check(beta)?;
        Ok(self.frobenius_raw(beta))
    }

    fn frobenius_raw(&self, beta: &ExtElement) -> ExtElement {
        let f = self.base;
        let mut out = self.zero();
        for (&b, col) in beta.coeffs.iter().zip(&self.frobenius_columns) {
            if b.is_zero() {
                continue;
            }
            for (o, &c) in out.coeffs.iter_mut().zip(&col.coeffs) {
                *o = f.add(*o, f.mul(b, c));
            }
        }
        out
    }

    /// `beta^(q^i)`.
    pub fn frobenius_pow(&self, beta: &ExtElement, i: usize) -> Result<ExtElement> {
        self.check(beta)?;
        let mut out = beta.clone();
        for _ in 0..i % self.n {
            out = self.frobenius_raw(&out);
        }
        Ok(out)
    }

    /// The `n` conjugates `beta, beta^q, ..., beta^(q^(n-1))`, with repeats.
    pub fn conjugates(&self, beta: &ExtElement) -> Result<Vec<ExtElement>> {
        self.check(beta)?;
        let mut out = Vec::with_capacity(self.n);
        let mut c = beta.clone();
        for _ in 0..self.n {
            let next = self.frobenius_raw(&c);
            out.push(c);
            c = next;
        }
        Ok(out)
    }

    /// The distinct conjugates of `beta`.
    pub fn frobenius_orbit(&self, beta: &ExtElement) -> Result<Vec<ExtElement>> {
        self.check(beta)?;
        let mut out = vec![beta.clone()];
        let mut c = self.frobenius_raw(beta);
        while &c != beta {
            let next = self.frobenius_raw(&c);
            out.push(c);
            c = next;
        }
        Ok(out)
    }

    pub fn in_subfield(&self, beta: &ExtElement, m: usize) -> bool {
        self.frobenius_pow(beta, m)
            .map(|c| &c == beta)
            .unwrap_or(false)
    }

    /// Coerces an element of the prime-subfield copy of GF(q) to the base
    /// field; fails when any coordinate above index 0 is nonzero.
    pub fn to_base(&self, e: &ExtElement) -> Result<FieldElement> {
        self.check(e)?;
        if e.coeffs[1..].iter().any(|c| !c.is_zero()) {
            return Err(Error::PreconditionViolated(format!(
                "{e} does not lie in the base field"
            )));
        }
        Ok(e.coeffs[0])
    }

    /// `Tr_{q^n : q^m}(beta) = sum_i beta^(q^(m*i))`, an element of GF(q^m).
    pub fn rel_trace(&self, beta: &ExtElement, m: usize) -> Result<ExtElement> {
        self.check(beta)?;
        if m == 0 || !self.n.is_multiple_of(m) {
            return Err(Error::NotADivisor { m, n: self.n });
        }
        let mut acc = self.zero();
        let mut term = beta.clone();
        for _ in 0..self.n / m {
            acc = self.add_raw(&acc, &term);
            for _ in 0..m {
                term = self.frobenius_raw(&term);
            }
        }
        debug_assert!(self.in_subfield(&acc, m));
        Ok(acc)
    }

    /// `Tr_{q^h : q}(beta)` for `beta` in the subfield GF(q^h).
    pub fn subfield_trace(&self, beta: &ExtElement, h: usize) -> Result<FieldElement> {
        self.check(beta)?;
        if h == 0 || !self.n.is_multiple_of(h) {
            return Err(Error::NotADivisor { m: h, n: self.n });
        }
        if !self.in_subfield(beta, h) {
            return Err(Error::PreconditionViolated(format!(
                "{beta} is not in GF(q^{h})"
            )));
        }
        let mut acc = self.zero();
        let mut term = beta.clone();
        for _ in 0..h {
            acc = self.add_raw(&acc, &term);
            term = self.frobenius_raw(&term);
        }
        self.to_base(&acc)
    }

    /// `Tr(beta) = sum_{i<n} beta^(q^i)`.
    pub fn trace(&self, beta: &ExtElement) -> FieldElement {
        let conj = self.conjugates(beta).expect("element of this field");
        let sum = conj
            .iter()
            .fold(self.zero(), |acc, c| self.add_raw(&acc, c));
        self.to_base(&sum).expect("trace lies in GF(q)")
    }

    /// `St(beta) = sum_{i<j<n} beta^(q^i) beta^(q^j)`, by the double sum.
    pub fn subtrace(&self, beta: &ExtElement) -> Result<FieldElement> {
        if self.n < 2 {
            return Err(Error::DegreeTooSmall {
                got: self.n,
                need: 2,
            });
        }
        let conj = self.conjugates(beta)?;
        let mut acc = self.zero();
        for i in 0..self.n {
            for j in i + 1..self.n {
                acc = self.add_raw(&acc, &self.mul_raw(&conj[i], &conj[j]));
            }
        }
        Ok(self.to_base(&acc).expect("subtrace lies in GF(q)"))
    }

    /// Subtrace as a sum of traces of `beta^(q^i + 1)`:
    /// for `n = 2m+1`, `sum_{i=1..m} Tr(beta^(q^i+1))`;
    /// for `n = 2m`, `sum_{i=1..m-1} Tr(beta^(q^i+1)) + Tr_{q^m:q}(beta^(q^m+1))`.
    pub fn subtrace_from_traces(&self, beta: &ExtElement) -> Result<FieldElement> {
        if self.n < 2 {
            return Err(Error::DegreeTooSmall {
                got: self.n,
                need: 2,
            });
        }
        let f = self.base;
        let half = self.n / 2;
        let conj = self.conjugates(beta)?;
        let full_terms = if self.n % 2 == 1 { half } else { half - 1 };
        let mut acc = FieldElement::ZERO;
        for c in &conj[1..=full_terms] {
            acc = f.add(acc, self.trace(&self.mul_raw(c, beta)));
        }
        if self.n.is_multiple_of(2) {
            let norm = self.mul_raw(&conj[half], beta);
            acc = f.add(acc, self.subfield_trace(&norm, half)?);
        }
        Ok(acc)
    }

    /// Trace and subtrace of `beta` alongside the values predicted from its
    /// minimal polynomial.
    pub fn trace_subtrace_of_power_orbit(&self, beta: &ExtElement) -> Result<PowerOrbit> {
        let trace = self.trace(beta);
        let subtrace = self.subtrace(beta)?;
        let min_poly = minimal_polynomial(self, beta)?;
        let deg = min_poly.degree().expect("nonzero");
        let d = self.n / deg;
        let f = self.base;
        let tr_p = min_poly.coeff(deg - 1);
        // Subtrace of a linear polynomial is the empty pair sum.
        let st_p = if deg >= 2 {
            min_poly.coeff(deg - 2)
        } else {
            FieldElement::ZERO
        };
        let odd = |x: usize| x % 2 == 1;
        let times = |c: usize, e: FieldElement| if odd(c) { e } else { FieldElement::ZERO };
        let predicted_trace = times(d, tr_p);
        let predicted_subtrace = f.add(times(d, st_p), times(d * (d - 1) / 2, f.square(tr_p)));
        Ok(PowerOrbit {
            trace,
            subtrace,
            d,
            min_poly,
            predicted_trace,
            predicted_subtrace,
        })
    }
}
