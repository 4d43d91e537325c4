//! Exact counts of field elements, tuples and irreducible polynomials with
//! prescribed trace and subtrace.

mod arith;
mod closed;
mod lyndon;
mod table;

pub use arith::{classical_count, classical_count_trace_nonzero, divisors, mobius, prime_factors};
pub use closed::{
    f_closed, f_dispatch, f_one, fstar_closed, fstar_recursive, fstar_recursive_table, p_count,
};
#[doc(hidden)]
pub use closed::{f_closed_mutated, SignFlip};
pub use lyndon::{cattell_gf2, lyndon_count, ResidueClassSpec};
pub use table::{CountKind, CountTable};
