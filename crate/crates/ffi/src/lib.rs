//! C ABI over `tracecount`.
//!
//! Fields are opaque handles from [`tc_field_new`], released with
//! [`tc_field_free`]. Every fallible call returns a [`TcStatus`]; on failure
//! [`tc_last_error`] describes the cause. Strings handed out by the library
//! are NUL-terminated and must be released with [`tc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tracecount::counting::{f_dispatch, fstar_closed, p_count, CountKind, CountTable};
use tracecount::oracle::{oracle_f, oracle_fstar, oracle_p, verify_grid, Budget};
use tracecount::{Error, FieldElement, FieldParams};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcStatus {
    Ok = 0,
    /// A required pointer was null.
    NullPointer = 1,
    /// Bad degree, modulus, element index or count kind.
    InvalidArgument = 2,
    /// A sweep or enumeration would exceed its budget.
    BudgetExceeded = 3,
    /// An internal consistency check failed; this is a bug.
    Internal = 4,
}

/// Which count to compute.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcKind {
    /// Elements of GF(q^n) with trace t and subtrace s.
    F = 0,
    /// Tuples in GF(q)^n with coordinate sum t and pair sum s.
    Fstar = 1,
    /// Monic irreducibles of degree n with trace t and subtrace s.
    P = 2,
}

impl From<TcKind> for CountKind {
    fn from(k: TcKind) -> Self {
        match k {
            TcKind::F => CountKind::F,
            TcKind::Fstar => CountKind::Fstar,
            TcKind::P => CountKind::P,
        }
    }
}

/// Opaque handle to GF(2^k) with a fixed modulus.
pub struct TcField {
    params: FieldParams,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(e: &Error) -> TcStatus {
    match e {
        _ if e.is_budget() => TcStatus::BudgetExceeded,
        Error::InexactDivision { .. } | Error::NegativeCount(_) => TcStatus::Internal,
        _ => TcStatus::InvalidArgument,
    }
}

/// Runs `body`, mapping errors and panics to a status.
fn guard(body: impl FnOnce() -> Result<(), (TcStatus, String)>) -> TcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            TcStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TcStatus::Internal
        }
    }
}

fn fail(e: Error) -> (TcStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (TcStatus, String) {
    (TcStatus::NullPointer, format!("{what} is null"))
}

fn budget(max_points: u64, max_poly: u64) -> Budget {
    let defaults = Budget::default();
    Budget {
        max_points: if max_points == 0 {
            defaults.max_points
        } else {
            max_points
        },
        max_poly: if max_poly == 0 {
            defaults.max_poly
        } else {
            max_poly
        },
        time_cap: None,
    }
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), (TcStatus, String)> {
    let c = CString::new(text).map_err(|_| (TcStatus::Internal, "interior NUL".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Creates GF(2^k). `modulus` is the binary modulus as an integer, or 0 for
/// the default (least irreducible of degree k).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn tc_field_new(k: u32, modulus: u32, out: *mut *mut TcField) -> TcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let modulus = (modulus != 0).then_some(modulus);
        let params = FieldParams::new(k, modulus).map_err(fail)?;
        *out = Box::into_raw(Box::new(TcField { params }));
        Ok(())
    })
}

/// Releases a handle from [`tc_field_new`]. Null is ignored.
///
/// # Safety
/// `field` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tc_field_free(field: *mut TcField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// q = 2^k, or 0 for a null handle.
///
/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tc_field_q(field: *const TcField) -> u32 {
    field.as_ref().map_or(0, |f| f.params.q())
}

/// The binary modulus in effect, or 0 for a null handle.
///
/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tc_field_modulus(field: *const TcField) -> u32 {
    field.as_ref().map_or(0, |f| f.params.modulus())
}

/// Computes one count from its closed form and writes it as a decimal
/// string to `*out`.
///
/// # Safety
/// `field` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn tc_count(
    field: *const TcField,
    kind: TcKind,
    n: u32,
    t: u32,
    s: u32,
    out: *mut *mut c_char,
) -> TcStatus {
    guard(|| {
        let field = field.as_ref().ok_or_else(|| null("field"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let p = field.params;
        let t: FieldElement = p.element(t as u64).map_err(fail)?;
        let s: FieldElement = p.element(s as u64).map_err(fail)?;
        let n = n as usize;
        let value = match kind {
            TcKind::F => f_dispatch(p, n, t, s),
            TcKind::Fstar => fstar_closed(p, n, t, s),
            TcKind::P => p_count(p, n, t, s),
        }
        .map_err(fail)?;
        write_string(out, value.to_string())
    })
}

/// Writes the closed-form `(t, s)` table as JSON to `*out`.
///
/// # Safety
/// `field` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn tc_table_json(
    field: *const TcField,
    kind: TcKind,
    n: u32,
    out: *mut *mut c_char,
) -> TcStatus {
    guard(|| {
        let field = field.as_ref().ok_or_else(|| null("field"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let table = CountTable::closed(field.params, n as usize, kind.into()).map_err(fail)?;
        write_string(out, table.to_json())
    })
}

/// Writes the brute-force `(t, s)` table as JSON to `*out`. A zero cap
/// selects the default budget.
///
/// # Safety
/// `field` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn tc_oracle_table_json(
    field: *const TcField,
    kind: TcKind,
    n: u32,
    max_points: u64,
    max_poly: u64,
    out: *mut *mut c_char,
) -> TcStatus {
    guard(|| {
        let field = field.as_ref().ok_or_else(|| null("field"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let b = budget(max_points, max_poly);
        let p = field.params;
        let n = n as usize;
        let table = match kind {
            TcKind::F => oracle_f(p, n, &b),
            TcKind::Fstar => oracle_fstar(p, n, &b),
            TcKind::P => oracle_p(p, n, &b),
        }
        .map_err(fail)?;
        write_string(out, table.to_json())
    })
}

/// Runs the verification grid for base fields up to GF(2^max_k) and writes
/// the JSON report to `*out`; `*passed` is set to whether every check
/// passed. A zero cap selects the default budget.
///
/// # Safety
/// `out` and `passed` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn tc_verify_json(
    max_k: u32,
    max_points: u64,
    max_poly: u64,
    out: *mut *mut c_char,
    passed: *mut bool,
) -> TcStatus {
    guard(|| {
        if out.is_null() || passed.is_null() {
            return Err(null("out"));
        }
        if !(1..=16).contains(&max_k) {
            return Err(fail(Error::UnsupportedDegree(max_k)));
        }
        let report = verify_grid(max_k, &budget(max_points, max_poly));
        *passed = report.passed();
        write_string(out, report.to_json())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `text` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tc_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn tc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Status as a static string, e.g. "budget exceeded".
#[no_mangle]
pub extern "C" fn tc_status_name(status: TcStatus) -> *const c_char {
    let name: &'static [u8] = match status {
        TcStatus::Ok => b"ok\0",
        TcStatus::NullPointer => b"null pointer\0",
        TcStatus::InvalidArgument => b"invalid argument\0",
        TcStatus::BudgetExceeded => b"budget exceeded\0",
        TcStatus::Internal => b"internal error\0",
    };
    name.as_ptr().cast()
}
