//! Binary Lyndon words and the GF(2) residue-class counts built from them.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;

use super::arith::{divisors, mobius};

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::from(1u8), |acc, i| acc * (n - i) / (i + 1))
}

/// Binary Lyndon words of length `n` with `ones` ones:
/// `(1/n) sum_{d | gcd(n, ones)} mu(d) C(n/d, ones/d)`.
pub fn lyndon_count(n: u64, ones: u64) -> BigInt {
    assert!(n >= 1 && ones <= n, "need 1 <= n and ones <= n");
    let g = n.gcd(&ones);
    let sum: BigInt = divisors(g)
        .into_iter()
        .map(|d| mobius(d) * BigInt::from(binomial(n / d, ones / d)))
        .sum();
    let (quot, rem) = sum.div_rem(&BigInt::from(n));
    assert!(rem == BigInt::default(), "Lyndon sum not divisible by n");
    quot
}

/// Which residue class of the number of ones, mod 4, counts the binary
/// irreducibles of degree `n` with a given trace and subtrace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueClassSpec {
    pub n: u64,
    pub trace_bit: u8,
    pub subtrace_bit: u8,
    pub residue: u8,
}

impl ResidueClassSpec {
    pub fn new(n: u64, trace_bit: u8, subtrace_bit: u8) -> Self {
        assert!(trace_bit < 2 && subtrace_bit < 2, "bits must be 0 or 1");
        let two_n = 2 * (n % 4);
        let residue = match (trace_bit, subtrace_bit) {
            (0, 0) => two_n + 2,
            (0, 1) => two_n,
            (1, 0) => two_n + 3,
            _ => two_n + 1,
        } % 4;
        ResidueClassSpec {
            n,
            trace_bit,
            subtrace_bit,
            residue: residue as u8,
        }
    }

    /// `sum_{k = residue mod 4} L(n, k)`.
    pub fn count(&self) -> BigInt {
        (0..=self.n)
            .filter(|k| k % 4 == self.residue as u64)
            .map(|k| lyndon_count(self.n, k))
            .sum()
    }
}

/// Binary irreducibles of degree `n >= 2` with the given trace and subtrace
/// bits, via Lyndon words.
pub fn cattell_gf2(n: u64, trace_bit: u8, subtrace_bit: u8) -> BigInt {
    assert!(n >= 2, "need n >= 2");
    ResidueClassSpec::new(n, trace_bit, subtrace_bit).count()
}
