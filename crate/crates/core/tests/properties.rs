use num_bigint::BigInt;
use proptest::prelude::*;
use tracecount::counting::{
    classical_count, classical_count_trace_nonzero, f_dispatch, fstar_closed, fstar_recursive,
    p_count,
};
use tracecount::extfield::ExtField;
use tracecount::polyring::{minimal_polynomial, trace_of};
use tracecount::{FieldElement, FieldParams};

fn field(k: u32) -> FieldParams {
    FieldParams::new(k, None).unwrap()
}

fn q_pow(params: FieldParams, n: usize) -> BigInt {
    BigInt::from(1u8) << (params.k() as usize * n)
}

/// `(k, n, t, s)` with `t, s` valid indices in GF(2^k).
fn point(
    max_k: u32,
    n: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = (u32, usize, u32, u32)> {
    (1..=max_k, n).prop_flat_map(|(k, n)| {
        let q = 1u32 << k;
        (Just(k), Just(n), 0..q, 0..q)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn p_is_invariant_under_scaling((k, n, t, s) in point(16, 2..=30), c in 1u32..65536) {
        let f = field(k);
        let c = FieldElement::from_bits(c % (f.q() - 1) + 1);
        let (t, s) = (FieldElement::from_bits(t), FieldElement::from_bits(s));
        let moved = p_count(f, n, f.mul(c, t), f.mul(f.square(c), s)).unwrap();
        prop_assert_eq!(moved, p_count(f, n, t, s).unwrap());
    }

    #[test]
    fn p_counts_are_nonnegative_and_bounded((k, n, t, s) in point(16, 2..=60)) {
        let f = field(k);
        let p = p_count(f, n, FieldElement::from_bits(t), FieldElement::from_bits(s)).unwrap();
        prop_assert!(p >= BigInt::default());
        prop_assert!(p <= classical_count(f, n).unwrap());
    }

    #[test]
    fn f_row_sums_to_q_power((k, n, t, _s) in point(6, 2..=16)) {
        // For fixed t the subtrace ranges over GF(q): q^(n-1) elements.
        let f = field(k);
        let t = FieldElement::from_bits(t);
        let row: BigInt = f.elements().map(|s| f_dispatch(f, n, t, s).unwrap()).sum();
        prop_assert_eq!(row, q_pow(f, n - 1));
    }

    #[test]
    fn p_row_with_nonzero_trace((k, n, t, _s) in point(6, 2..=24)) {
        let f = field(k);
        prop_assume!(t != 0);
        let t = FieldElement::from_bits(t);
        let row: BigInt = f.elements().map(|s| p_count(f, n, t, s).unwrap()).sum();
        prop_assert_eq!(row, classical_count_trace_nonzero(f, n).unwrap());
    }

    #[test]
    fn fstar_recursion_matches_closed_form((k, n, t, s) in point(3, 2..=5)) {
        let f = field(k);
        let (t, s) = (FieldElement::from_bits(t), FieldElement::from_bits(s));
        prop_assert_eq!(fstar_recursive(f, n, t, s).unwrap(), fstar_closed(f, n, t, s).unwrap());
    }

    #[test]
    fn odd_degree_f_equals_fstar((k, m, t, s) in point(16, 1..=20)) {
        let f = field(k);
        let n = 2 * m + 1;
        let (t, s) = (FieldElement::from_bits(t), FieldElement::from_bits(s));
        prop_assert_eq!(f_dispatch(f, n, t, s).unwrap(), fstar_closed(f, n, t, s).unwrap());
    }

    #[test]
    fn element_trace_is_minimal_polynomial_coefficient(k in 1u32..=3, n in 2usize..=4, seed in any::<u64>()) {
        let f = field(k);
        let ext = ExtField::new(f, n, None).unwrap();
        let beta = ext.from_index(seed % ext.size().unwrap()).unwrap();
        let p = minimal_polynomial(&ext, &beta).unwrap();
        let d = n / p.degree().unwrap();
        let tr = trace_of(&p).unwrap_or(FieldElement::ZERO);
        let tr = if p.degree() == Some(1) { p.coeff(0) } else { tr };
        let want = if d % 2 == 1 { tr } else { FieldElement::ZERO };
        prop_assert_eq!(ext.trace(&beta), want);
    }
}
