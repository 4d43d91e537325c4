//! Exact counts of elements of GF(q^n) and of monic irreducible polynomials
//! over GF(q), q = 2^k, with prescribed trace and subtrace, together with
//! brute-force oracles that check every closed form.
//!
//! ```
//! use tracecount::{p_count, FieldElement, FieldParams};
//!
//! let gf4 = FieldParams::new(2, None).unwrap();
//! let zero = FieldElement::ZERO;
//! assert_eq!(p_count(gf4, 3, zero, zero).unwrap(), 2.into());
//! ```

pub mod cli;
pub mod counting;
pub mod error;
pub mod extfield;
pub mod gf2k;
pub mod oracle;
pub mod polyring;

pub use counting::{
    cattell_gf2, classical_count, classical_count_trace_nonzero, f_closed, f_dispatch, f_one,
    fstar_closed, fstar_recursive, lyndon_count, mobius, p_count, CountKind, CountTable,
    ResidueClassSpec,
};
pub use error::{Error, Result};
pub use extfield::{ExtElement, ExtField};
pub use gf2k::{FieldElement, FieldParams};
pub use oracle::{oracle_f, oracle_fstar, oracle_p, verify_grid, Budget, VerifyReport};
pub use polyring::{enumerate_monic_irreducibles, subtrace_of, trace_of, Poly};
