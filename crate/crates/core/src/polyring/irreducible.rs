use super::Poly;
use crate::counting::prime_factors;
use crate::error::{Error, Result};
use crate::gf2k::{FieldElement, FieldParams};
use crate::oracle::Budget;

/// Restricts enumeration to a prescribed trace (coefficient of `x^(n-1)`)
/// and subtrace (coefficient of `x^(n-2)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceFilter {
    pub trace: FieldElement,
    pub subtrace: FieldElement,
}

/// Rabin's test: `f` of degree `n` is irreducible iff `x^(q^n) = x mod f`
/// and `gcd(x^(q^(n/p)) - x, f) = 1` for every prime `p | n`.
pub fn is_irreducible(f: &Poly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let params = f.params();
    let f = f.make_monic();
    let x = Poly::x(params);
    let maximal: Vec<usize> = prime_factors(n as u64)
        .into_iter()
        .map(|p| n / p as usize)
        .collect();

    // x^(q^i) mod f for i = 1..=n.
    let mut power = x.clone();
    for i in 1..=n {
        power = power.frobenius_mod(&f).expect("nonzero modulus");
        if maximal.contains(&i) {
            let g = power.add(&x).and_then(|d| d.gcd(&f)).expect("same params");
            if g.degree() != Some(0) {
                return false;
            }
        }
    }
    power == x.rem(&f).expect("nonzero modulus")
}

/// Reference check: no monic divisor of degree `1..=deg/2`.
pub fn is_irreducible_by_trial_division(f: &Poly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(n) => n,
    };
    let params = f.params();
    for d in 1..=n / 2 {
        let count = (params.q() as u64).pow(d as u32);
        for low in 0..count {
            let g = Poly::monic_from_low_index(params, d, low);
            if f.rem(&g).expect("monic divisor").is_zero() {
                return false;
            }
        }
    }
    true
}

/// Number of bits of a packed coefficient vector of length `len`.
fn packed_bits(params: FieldParams, len: usize) -> usize {
    params.k() as usize * len
}

fn check_budget(params: FieldParams, n: usize, budget: &Budget) -> Result<u64> {
    let bits = packed_bits(params, n);
    let cap = budget.max_poly as u128;
    if bits >= 64 || (1u128 << bits) > cap {
        return Err(Error::BudgetExceeded {
            what: "monic polynomial enumeration",
            needed: if bits >= 128 {
                u128::MAX
            } else {
                1u128 << bits
            },
            cap,
        });
    }
    Ok(1u64 << bits)
}

/// Sieve over the `q^n` monic polynomials of degree `n` (indexed by their
/// lower coefficients); `true` marks irreducibles.
fn sieve(params: FieldParams, n: usize) -> Vec<bool> {
    let total = 1usize << packed_bits(params, n);
    let mut irreducible = vec![true; total];
    if n == 1 {
        return irreducible;
    }
    for d in 1..=n / 2 {
        let factors = sieve(params, d);
        let m = n - d;
        let bits = packed_bits(params, m);
        for (g_low, _) in factors.iter().enumerate().filter(|(_, &irr)| irr) {
            let g = Poly::monic_from_low_index(params, d, g_low as u64);
            // g * (x^m + h) = (g_low << k*m) ^ (g * h), and g * h is
            // GF(2)-linear in the bits of h.
            let images: Vec<usize> = (0..bits)
                .map(|j| {
                    let unit = Poly::monomial(
                        params,
                        FieldElement::from_bits(1 << (j % params.k() as usize)),
                        j / params.k() as usize,
                    );
                    g.mul_unchecked(&unit).index().expect("fits") as usize
                })
                .collect();
            let mut current = g_low << bits;
            irreducible[current] = false;
            // Gray-code walk over h: one XOR per product.
            for i in 1usize..(1usize << bits) {
                current ^= images[i.trailing_zeros() as usize];
                irreducible[current] = false;
            }
        }
    }
    irreducible
}

/// Reverses the base-q digits so that the coefficient of `x^0` is most
/// significant; this is the enumeration sort key.
fn lex_key(params: FieldParams, n: usize, low: u64) -> u64 {
    let k = params.k() as usize;
    let mask = (params.q() - 1) as u64;
    (0..n).fold(0u64, |acc, i| (acc << k) | ((low >> (k * i)) & mask))
}

/// Lower-coefficient indices of the monic irreducibles of degree `n`, in
/// enumeration order (lexicographic on `(c_0, ..., c_{n-1})`).
pub fn monic_irreducible_indices(
    params: FieldParams,
    n: usize,
    filter: Option<TraceFilter>,
    budget: &Budget,
) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::DegreeTooSmall { got: 0, need: 1 });
    }
    if filter.is_some() && n < 2 {
        return Err(Error::DegreeTooSmall { got: n, need: 2 });
    }
    check_budget(params, n, budget)?;
    let k = params.k() as usize;
    let mask = (params.q() - 1) as u64;
    let mut out: Vec<u64> = sieve(params, n)
        .into_iter()
        .enumerate()
        .filter(|&(_, irr)| irr)
        .map(|(low, _)| low as u64)
        .filter(|&low| match filter {
            None => true,
            Some(TraceFilter { trace, subtrace }) => {
                (low >> (k * (n - 1))) & mask == trace.bits() as u64
                    && (low >> (k * (n - 2))) & mask == subtrace.bits() as u64
            }
        })
        .collect();
    out.sort_unstable_by_key(|&low| lex_key(params, n, low));
    Ok(out)
}

/// All monic irreducible polynomials of degree `n`, optionally restricted
/// to a trace/subtrace pair.
pub fn enumerate_monic_irreducibles(
    params: FieldParams,
    n: usize,
    filter: Option<TraceFilter>,
    budget: &Budget,
) -> Result<Vec<Poly>> {
    Ok(monic_irreducible_indices(params, n, filter, budget)?
        .into_iter()
        .map(|low| Poly::monic_from_low_index(params, n, low))
        .collect())
}

/// Number of monic irreducibles of degree `n` found by enumeration.
pub fn irreducible_count(params: FieldParams, n: usize, budget: &Budget) -> Result<u64> {
    check_budget(params, n, budget)?;
    Ok(sieve(params, n).into_iter().filter(|&b| b).count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::classical_count;
    use num_bigint::BigInt;

    fn gf(k: u32) -> FieldParams {
        FieldParams::new(k, None).unwrap()
    }

    fn bin(f: FieldParams, bits: &[u64]) -> Poly {
        Poly::from_indices(f, bits).unwrap()
    }

    #[test]
    fn examples() {
        let f = gf(1);
        assert!(is_irreducible(&bin(f, &[1, 1, 1])));
        assert!(!is_irreducible(&bin(f, &[1, 0, 1])));
        let cubics = (0..8u64)
            .filter(|&low| is_irreducible(&Poly::monic_from_low_index(f, 3, low)))
            .count();
        assert_eq!(cubics, 2);
    }

    #[test]
    fn enumeration_examples() {
        let f = gf(1);
        let b = Budget::default();
        assert_eq!(
            enumerate_monic_irreducibles(f, 2, None, &b).unwrap(),
            vec![bin(f, &[1, 1, 1])]
        );
        let zero = FieldElement::ZERO;
        let one = FieldElement::ONE;
        let filt = |t, s| {
            Some(TraceFilter {
                trace: t,
                subtrace: s,
            })
        };
        assert_eq!(
            enumerate_monic_irreducibles(f, 4, filt(zero, zero), &b).unwrap(),
            vec![bin(f, &[1, 1, 0, 0, 1])]
        );
        assert!(enumerate_monic_irreducibles(f, 4, filt(zero, one), &b)
            .unwrap()
            .is_empty());
        // Lexicographic on (c0, c1, c2, c3).
        let all = enumerate_monic_irreducibles(f, 4, None, &b).unwrap();
        assert_eq!(
            all,
            vec![
                bin(f, &[1, 0, 0, 1, 1]),
                bin(f, &[1, 1, 0, 0, 1]),
                bin(f, &[1, 1, 1, 1, 1])
            ]
        );
        assert_eq!(
            enumerate_monic_irreducibles(gf(2), 2, None, &b)
                .unwrap()
                .len(),
            6
        );
    }

    #[test]
    fn budget_enforced() {
        let b = Budget {
            max_poly: 1 << 10,
            ..Budget::default()
        };
        assert!(matches!(
            enumerate_monic_irreducibles(gf(1), 11, None, &b),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(enumerate_monic_irreducibles(gf(1), 10, None, &b).is_ok());
        assert!(matches!(
            enumerate_monic_irreducibles(
                gf(1),
                1,
                Some(TraceFilter {
                    trace: FieldElement::ZERO,
                    subtrace: FieldElement::ZERO
                }),
                &b
            ),
            Err(Error::DegreeTooSmall { .. })
        ));
    }

    #[test]
    fn rabin_agrees_with_trial_division() {
        for k in 1..=4u32 {
            let f = gf(k);
            let mut n = 1;
            while k as usize * n <= 12 {
                for low in 0..(1u64 << (k as usize * n)) {
                    let p = Poly::monic_from_low_index(f, n, low);
                    assert_eq!(
                        is_irreducible(&p),
                        is_irreducible_by_trial_division(&p),
                        "{p}"
                    );
                }
                n += 1;
            }
        }
    }

    #[test]
    fn sieve_agrees_with_rabin() {
        let b = Budget::default();
        for (k, max_n) in [(1u32, 12usize), (2, 6), (3, 4), (4, 3), (6, 2)] {
            let f = gf(k);
            for n in 1..=max_n {
                let sieved = monic_irreducible_indices(f, n, None, &b).unwrap();
                let mut rabin: Vec<u64> = (0..(1u64 << (k as usize * n)))
                    .filter(|&low| is_irreducible(&Poly::monic_from_low_index(f, n, low)))
                    .collect();
                rabin.sort_unstable_by_key(|&low| lex_key(f, n, low));
                assert_eq!(sieved, rabin, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn counts_match_classical() {
        let b = Budget::default();
        for (k, max_n) in [(1u32, 16usize), (2, 8), (3, 5), (4, 4), (8, 2)] {
            let f = gf(k);
            for n in 1..=max_n {
                let c = irreducible_count(f, n, &b).unwrap();
                assert_eq!(
                    BigInt::from(c),
                    classical_count(f, n).unwrap(),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn non_monic_input() {
        let f = gf(2);
        // 2*(x^2+x+2) is irreducible over GF(4) iff x^2+x+2 is.
        let p = bin(f, &[2, 1, 1]);
        assert_eq!(
            is_irreducible(&p.scale(FieldElement::from_bits(2))),
            is_irreducible(&p)
        );
        assert!(!is_irreducible(&Poly::one(f)));
        assert!(!is_irreducible(&Poly::zero(f)));
    }
}
