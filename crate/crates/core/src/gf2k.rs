//! Arithmetic in GF(q), q = 2^k, 1 <= k <= 16.
//!
//! Elements are k-bit vectors in the polynomial basis: bit `i` is the
//! coefficient of `a^i`, where `a` is a root of the field modulus. The
//! integer value of that vector is the element's canonical index, which is
//! also its text form.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_K: u32 = 16;

/// Lexicographically least monic irreducible binary polynomial of each
/// degree 1..=16 (bit `i` = coefficient of `x^i`).
const DEFAULT_MODULI: [u32; 16] = [
    0x2, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x203, 0x409, 0x805, 0x1009, 0x201b, 0x4021,
    0x8003, 0x1002b,
];

/// An element of GF(2^k) by canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps a raw bit vector without range checking; see
    /// [`FieldParams::element`] for the checked constructor.
    #[inline]
    pub const fn from_bits(bits: u32) -> Self {
        FieldElement(bits)
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The base field GF(2^k) defined by a degree-k irreducible binary modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldParams {
    k: u32,
    modulus: u32,
}

impl FieldParams {
    /// Builds GF(2^k). Without a modulus the default table entry is used.
    pub fn new(k: u32, modulus: Option<u32>) -> Result<Self> {
        if !(1..=MAX_K).contains(&k) {
            return Err(Error::UnsupportedDegree(k));
        }
        let modulus = match modulus {
            None => DEFAULT_MODULI[(k - 1) as usize],
            Some(m) => {
                if m >> k != 1 {
                    return Err(Error::BadModulus(format!("{m:#x}")));
                }
                if !binary_is_irreducible(m) {
                    return Err(Error::ReducibleModulus(binary_poly_string(m)));
                }
                m
            }
        };
        Ok(FieldParams { k, modulus })
    }

    /// GF(q) for a power of two `q`.
    pub fn with_q(q: u64, modulus: Option<u32>) -> Result<Self> {
        if q < 2 || !q.is_power_of_two() {
            return Err(Error::UnsupportedDegree(0));
        }
        Self::new(q.trailing_zeros(), modulus)
    }

    pub fn default_modulus(k: u32) -> Result<u32> {
        if !(1..=MAX_K).contains(&k) {
            return Err(Error::UnsupportedDegree(k));
        }
        Ok(DEFAULT_MODULI[(k - 1) as usize])
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    #[inline]
    pub fn q(&self) -> u32 {
        1 << self.k
    }

    /// Checked element constructor.
    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index >= self.q() as u64 {
            return Err(Error::InvalidElement {
                index,
                q: self.q() as u64,
            });
        }
        Ok(FieldElement(index as u32))
    }

    /// Parses the canonical decimal index form.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let index = parse_u64(text)?;
        self.element(index)
    }

    /// All `q` elements in increasing index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.q()).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    /// Shift-and-XOR product reduced modulo the field modulus.
    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let k = self.k;
        let mut acc = 0u32;
        let mut i = k;
        while i > 0 {
            i -= 1;
            acc <<= 1;
            if (acc >> k) & 1 == 1 {
                acc ^= self.modulus;
            }
            if (b.0 >> i) & 1 == 1 {
                acc ^= a.0;
            }
        }
        FieldElement(acc)
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q() as u64 - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Absolute trace `t + t^2 + ... + t^(2^(k-1))`, as a bit.
    pub fn trace_to_gf2(&self, a: FieldElement) -> u8 {
        let mut acc = a;
        let mut term = a;
        for _ in 1..self.k {
            term = self.square(term);
            acc = self.add(acc, term);
        }
        debug_assert!(acc.0 <= 1, "absolute trace left GF(2)");
        acc.0 as u8
    }

    /// The canonical additive character `(-1)^Tr(a)`.
    pub fn character(&self, a: FieldElement) -> i32 {
        if self.trace_to_gf2(a) == 0 {
            1
        } else {
            -1
        }
    }

    /// The unique square root `a^(q/2)`.
    pub fn sqrt(&self, a: FieldElement) -> FieldElement {
        let mut r = a;
        for _ in 1..self.k {
            r = self.square(r);
        }
        r
    }

    /// `q - 1` at zero, `-1` elsewhere.
    pub fn v_weight(&self, s: FieldElement) -> i64 {
        if s.is_zero() {
            self.q() as i64 - 1
        } else {
            -1
        }
    }

    /// Display form such as `a^2+a+1`; `0` for zero.
    pub fn pretty(&self, a: FieldElement) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for i in (0..self.k).rev() {
            if (a.0 >> i) & 1 == 1 {
                terms.push(match i {
                    0 => "1".to_string(),
                    1 => "a".to_string(),
                    _ => format!("a^{i}"),
                });
            }
        }
        terms.join("+")
    }

    /// Smallest-index generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        let order = self.q() as u64 - 1;
        let primes = crate::counting::prime_factors(order);
        self.elements()
            .skip(1)
            .find(|&g| {
                primes
                    .iter()
                    .all(|&p| self.pow(g, order / p) != FieldElement::ONE)
            })
            .expect("multiplicative group of a finite field is cyclic")
    }
}

impl fmt::Display for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF(2^{}) mod {}",
            self.k,
            binary_poly_string(self.modulus)
        )
    }
}

/// Decimal or `0x`-prefixed hexadecimal integer.
pub fn parse_u64(text: &str) -> Result<u64> {
    let t = text.trim();
    let parsed = if let Some(hex) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        u64::from_str_radix(hex, 16)
    } else {
        t.parse::<u64>()
    };
    parsed.map_err(|e| Error::Parse(format!("{t:?}: {e}")))
}

fn binary_degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

fn binary_rem(mut a: u32, b: u32) -> u32 {
    let db = binary_degree(b);
    while a != 0 && binary_degree(a) >= db {
        a ^= b << (binary_degree(a) - db);
    }
    a
}

/// Trial division by every binary polynomial of degree 1..=deg/2.
pub(crate) fn binary_is_irreducible(p: u32) -> bool {
    let deg = binary_degree(p);
    if deg < 1 {
        return false;
    }
    let half = deg / 2;
    (2u32..(1 << (half + 1))).all(|d| binary_rem(p, d) != 0)
}

pub(crate) fn binary_poly_string(p: u32) -> String {
    if p == 0 {
        return "0".into();
    }
    let mut terms = Vec::new();
    for i in (0..32).rev() {
        if (p >> i) & 1 == 1 {
            terms.push(match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            });
        }
    }
    terms.join("+")
}
