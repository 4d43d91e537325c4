//! Polynomials over GF(q).

mod irreducible;
mod text;

pub use irreducible::{
    enumerate_monic_irreducibles, irreducible_count, is_irreducible,
    is_irreducible_by_trial_division, monic_irreducible_indices, TraceFilter,
};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::extfield::{ExtElement, ExtField};
use crate::gf2k::{FieldElement, FieldParams};

/// A polynomial over GF(q); `coeffs[i]` is the coefficient of `x^i`, with
/// trailing zeros trimmed so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    params: FieldParams,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(params: FieldParams, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { params, coeffs }
    }

    /// Builds from element indices, checking each against `q`.
    pub fn from_indices(params: FieldParams, indices: &[u64]) -> Result<Self> {
        let coeffs = indices
            .iter()
            .map(|&i| params.element(i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(params, coeffs))
    }

    pub fn zero(params: FieldParams) -> Self {
        Poly {
            params,
            coeffs: Vec::new(),
        }
    }

    pub fn one(params: FieldParams) -> Self {
        Poly::constant(params, FieldElement::ONE)
    }

    pub fn constant(params: FieldParams, c: FieldElement) -> Self {
        Poly::new(params, vec![c])
    }

    pub fn x(params: FieldParams) -> Self {
        Poly::monomial(params, FieldElement::ONE, 1)
    }

    pub fn monomial(params: FieldParams, c: FieldElement, degree: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; degree + 1];
        coeffs[degree] = c;
        Poly::new(params, coeffs)
    }

    /// Monic polynomial of degree `n` whose lower coefficients are the base-q
    /// digits of `low` (digit `i` is the coefficient of `x^i`).
    pub fn monic_from_low_index(params: FieldParams, n: usize, low: u64) -> Self {
        let k = params.k();
        let mask = (params.q() - 1) as u64;
        let mut coeffs: Vec<FieldElement> = (0..n)
            .map(|i| FieldElement::from_bits(((low >> (k as usize * i)) & mask) as u32))
            .collect();
        coeffs.push(FieldElement::ONE);
        Poly { params, coeffs }
    }

    /// Packed index `sum c_i q^i`, when it fits in 64 bits.
    pub fn index(&self) -> Option<u64> {
        let k = self.params.k() as usize;
        if self.coeffs.len() * k > 64 {
            return None;
        }
        Some(
            self.coeffs
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, c)| acc | ((c.bits() as u64) << (k * i))),
        )
    }

    #[inline]
    pub fn params(&self) -> FieldParams {
        self.params
    }

    #[inline]
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FieldElement::ONE
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.params != other.params {
            return Err(Error::ParamsMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let f = self.params;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Poly::new(f, coeffs))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        let f = self.params;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        let f = self.params;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check(divisor)?;
        let f = self.params;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let factor = f.mul(c, lead_inv);
            quot[i - dd] = factor;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = f.add(rem[idx], f.mul(factor, d));
            }
        }
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, modulus: &Poly) -> Result<Poly> {
        Ok(self.div_rem(modulus)?.1)
    }

    pub fn make_monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self
            .params
            .inv(self.leading())
            .expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.make_monic())
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, e: &BigUint, modulus: &Poly) -> Result<Poly> {
        self.check(modulus)?;
        if modulus.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut acc = Poly::one(self.params).rem(modulus)?;
        let base = self.rem(modulus)?;
        for i in (0..e.bits()).rev() {
            acc = acc.mul_unchecked(&acc).rem(modulus)?;
            if e.bit(i) {
                acc = acc.mul_unchecked(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// `self^q mod modulus` via `k` squarings.
    pub(crate) fn frobenius_mod(&self, modulus: &Poly) -> Result<Poly> {
        let mut acc = self.rem(modulus)?;
        for _ in 0..self.params.k() {
            acc = acc.mul_unchecked(&acc).rem(modulus)?;
        }
        Ok(acc)
    }

    /// Evaluates at a point of an extension of the coefficient field.
    pub fn eval_ext(&self, ext: &ExtField, beta: &ExtElement) -> Result<ExtElement> {
        if ext.base() != self.params {
            return Err(Error::ParamsMismatch);
        }
        let mut acc = ext.zero();
        for &c in self.coeffs.iter().rev() {
            acc = ext.mul(&acc, beta)?;
            acc = ext.add(&acc, &ext.embed(c))?;
        }
        Ok(acc)
    }
}

/// Coefficient of `x^(n-1)` of a monic degree-n polynomial.
pub fn trace_of(f: &Poly) -> Result<FieldElement> {
    let n = f.degree().unwrap_or(0);
    if n < 1 {
        return Err(Error::DegreeTooSmall { got: n, need: 1 });
    }
    if !f.is_monic() {
        return Err(Error::PreconditionViolated(
            "polynomial is not monic".into(),
        ));
    }
    Ok(f.coeff(n - 1))
}

/// Coefficient of `x^(n-2)` of a monic degree-n polynomial.
pub fn subtrace_of(f: &Poly) -> Result<FieldElement> {
    let n = f.degree().unwrap_or(0);
    if n < 2 {
        return Err(Error::DegreeTooSmall { got: n, need: 2 });
    }
    if !f.is_monic() {
        return Err(Error::PreconditionViolated(
            "polynomial is not monic".into(),
        ));
    }
    Ok(f.coeff(n - 2))
}

/// Minimal polynomial of `beta` over the base field, expanded as the
/// product of `x - c` over the Frobenius orbit of `beta`.
pub fn minimal_polynomial(ext: &ExtField, beta: &ExtElement) -> Result<Poly> {
    let orbit = ext.frobenius_orbit(beta)?;
    // Coefficients in GF(q^n), ascending.
    let mut acc = vec![ext.one()];
    for c in &orbit {
        let mut next = vec![ext.zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i + 1] = ext.add(&next[i + 1], a)?;
            next[i] = ext.add(&next[i], &ext.mul(a, c)?)?;
        }
        acc = next;
    }
    let coeffs = acc
        .iter()
        .map(|c| ext.to_base(c))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(ext.base(), coeffs))
}
