//! GF(q^n) on packed indices with discrete log tables, for exhaustive
//! sweeps. An element is the integer `sum c_i q^i` of its polynomial-basis
//! coordinates, so the embedded copy of GF(q) is exactly the indices `< q`.

use super::ExtField;
use crate::counting::prime_factors;
use crate::error::{Error, Result};

/// Largest packed width (bits) for which tables are built.
pub const MAX_PACKED_BITS: usize = 26;

/// Byte-sliced lookup tables for a GF(2)-linear map on packed vectors.
struct LinearMap {
    tables: Vec<[u32; 256]>,
}

impl LinearMap {
    fn new(images: &[u32]) -> Self {
        let tables = images
            .chunks(8)
            .map(|chunk| {
                let mut t = [0u32; 256];
                for (byte, slot) in t.iter_mut().enumerate() {
                    *slot = chunk
                        .iter()
                        .enumerate()
                        .filter(|(bit, _)| (byte >> bit) & 1 == 1)
                        .fold(0, |acc, (_, &img)| acc ^ img);
                }
                t
            })
            .collect();
        LinearMap { tables }
    }

    #[inline]
    fn apply(&self, v: u32) -> u32 {
        self.tables
            .iter()
            .enumerate()
            .fold(0, |acc, (i, t)| acc ^ t[((v >> (8 * i)) & 0xff) as usize])
    }
}

pub struct PackedExtField {
    k: u32,
    n: usize,
    /// `q^n - 1`.
    order: u64,
    log: Vec<u32>,
    exp: Vec<u32>,
    /// `q^i mod (q^n - 1)` for `i < n`.
    frobenius_exponents: Vec<u64>,
}

impl PackedExtField {
    pub fn new(field: &ExtField) -> Result<Self> {
        let base = field.base();
        let k = base.k();
        let n = field.degree();
        let bits = k as usize * n;
        if bits > MAX_PACKED_BITS {
            return Err(Error::BudgetExceeded {
                what: "packed log tables",
                needed: 1u128 << bits.min(127),
                cap: 1u128 << MAX_PACKED_BITS,
            });
        }
        let size = 1u64 << bits;
        let order = size - 1;

        let primes = prime_factors(order);
        let generator = (2..size.max(3))
            .map(|i| field.from_index(i % size).expect("in range"))
            .find(|g| {
                !field.is_zero(g)
                    && primes
                        .iter()
                        .all(|&p| field.pow(g, order / p) != field.one())
            })
            .unwrap_or_else(|| field.one());

        let images: Vec<u32> = (0..bits)
            .map(|j| {
                let unit = field.from_index(1u64 << j).expect("in range");
                field
                    .index(&field.mul_raw(&generator, &unit))
                    .expect("fits") as u32
            })
            .collect();
        let times_generator = LinearMap::new(&images);

        let mut log = vec![u32::MAX; size as usize];
        let mut exp = vec![0u32; order as usize];
        let mut cur = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            assert_eq!(log[cur as usize], u32::MAX, "generator is not primitive");
            *slot = cur;
            log[cur as usize] = i as u32;
            cur = times_generator.apply(cur);
        }
        assert_eq!(cur, 1, "generator order mismatch");

        let q = base.q() as u64;
        let mut frobenius_exponents = Vec::with_capacity(n);
        let mut e = 1u64 % order.max(1);
        for _ in 0..n {
            frobenius_exponents.push(e);
            e = (e as u128 * q as u128 % order as u128) as u64;
        }
        Ok(PackedExtField {
            k,
            n,
            order,
            log,
            exp,
            frobenius_exponents,
        })
    }

    pub fn size(&self) -> u64 {
        self.order + 1
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        1 << self.k
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let mut e = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        if e >= self.order {
            e -= self.order;
        }
        self.exp[e as usize]
    }

    /// `a^(q^i)`.
    #[inline]
    pub fn frobenius_pow(&self, a: u32, i: usize) -> u32 {
        if a == 0 {
            return 0;
        }
        let e = self.log[a as usize] as u64 * self.frobenius_exponents[i % self.n] % self.order;
        self.exp[e as usize]
    }

    /// Trace and subtrace of `a`, as indices into GF(q). The pair sum is
    /// accumulated as `sum_j c_j (c_0 + ... + c_{j-1})` over the conjugates.
    #[inline]
    pub fn trace_subtrace(&self, a: u32) -> (u32, u32) {
        if a == 0 {
            return (0, 0);
        }
        let l = self.log[a as usize] as u64;
        let mut e1 = 0u32;
        let mut e2 = 0u32;
        for &fe in &self.frobenius_exponents {
            let c = self.exp[(l * fe % self.order) as usize];
            e2 ^= self.mul(e1, c);
            e1 ^= c;
        }
        debug_assert!(e1 < self.q() && e2 < self.q());
        (e1, e2)
    }

    /// Whether the conjugates of `a` are pairwise distinct, i.e. `a`
    /// generates GF(q^n) over GF(q).
    pub fn has_full_orbit(&self, a: u32) -> bool {
        if a == 0 {
            return self.n == 1;
        }
        let l = self.log[a as usize] as u64;
        // a^(q^i) = a iff l*(q^i - 1) = 0 mod order.
        (1..self.n).all(|i| l * self.frobenius_exponents[i] % self.order != l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2k::FieldParams;

    #[test]
    fn agrees_with_generic_arithmetic() {
        for (k, n) in [(1, 5), (2, 3), (3, 2), (4, 2), (1, 1), (2, 1), (1, 8)] {
            let field = ExtField::new(FieldParams::new(k, None).unwrap(), n, None).unwrap();
            let packed = PackedExtField::new(&field).unwrap();
            let size = packed.size() as u32;
            for a in 0..size {
                let ea = field.from_index(a as u64).unwrap();
                for b in (0..size).step_by(3) {
                    let eb = field.from_index(b as u64).unwrap();
                    let want = field.index(&field.mul(&ea, &eb).unwrap()).unwrap() as u32;
                    assert_eq!(packed.mul(a, b), want);
                }
                let fr = field.index(&field.frobenius(&ea).unwrap()).unwrap() as u32;
                assert_eq!(packed.frobenius_pow(a, 1), fr);
                let (t, s) = packed.trace_subtrace(a);
                assert_eq!(t, field.trace(&ea).bits());
                if n >= 2 {
                    assert_eq!(s, field.subtrace(&ea).unwrap().bits());
                }
                let orbit = field.frobenius_orbit(&ea).unwrap().len();
                assert_eq!(packed.has_full_orbit(a), orbit == n);
            }
        }
    }

    #[test]
    fn refuses_oversized_tables() {
        let field = ExtField::new(FieldParams::new(9, None).unwrap(), 3, None).unwrap();
        assert!(matches!(
            PackedExtField::new(&field),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
