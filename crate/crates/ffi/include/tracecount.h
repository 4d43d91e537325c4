#ifndef TRACECOUNT_H
#define TRACECOUNT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which count to compute.
 */
typedef enum TcKind {
  /**
   * Elements of GF(q^n) with trace t and subtrace s.
   */
  TC_KIND_F = 0,
  /**
   * Tuples in GF(q)^n with coordinate sum t and pair sum s.
   */
  TC_KIND_FSTAR = 1,
  /**
   * Monic irreducibles of degree n with trace t and subtrace s.
   */
  TC_KIND_P = 2,
} TcKind;

/**
 * Result of every fallible call.
 */
typedef enum TcStatus {
  TC_STATUS_OK = 0,
  /**
   * A required pointer was null.
   */
  TC_STATUS_NULL_POINTER = 1,
  /**
   * Bad degree, modulus, element index or count kind.
   */
  TC_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A sweep or enumeration would exceed its budget.
   */
  TC_STATUS_BUDGET_EXCEEDED = 3,
  /**
   * An internal consistency check failed; this is a bug.
   */
  TC_STATUS_INTERNAL = 4,
} TcStatus;

/**
 * Opaque handle to GF(2^k) with a fixed modulus.
 */
typedef struct TcField TcField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates GF(2^k). `modulus` is the binary modulus as an integer, or 0 for
 * the default (least irreducible of degree k).
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum TcStatus tc_field_new(uint32_t k, uint32_t modulus, struct TcField **out);

/**
 * Releases a handle from [`tc_field_new`]. Null is ignored.
 *
 * # Safety
 * `field` must be null or a handle not yet freed.
 */
void tc_field_free(struct TcField *field);

/**
 * q = 2^k, or 0 for a null handle.
 *
 * # Safety
 * `field` must be null or a live handle.
 */
uint32_t tc_field_q(const struct TcField *field);

/**
 * The binary modulus in effect, or 0 for a null handle.
 *
 * # Safety
 * `field` must be null or a live handle.
 */
uint32_t tc_field_modulus(const struct TcField *field);

/**
 * Computes one count from its closed form and writes it as a decimal
 * string to `*out`.
 *
 * # Safety
 * `field` must be a live handle and `out` valid for writing.
 */
enum TcStatus tc_count(const struct TcField *field,
                       enum TcKind kind,
                       uint32_t n,
                       uint32_t t,
                       uint32_t s,
                       char **out);

/**
 * Writes the closed-form `(t, s)` table as JSON to `*out`.
 *
 * # Safety
 * `field` must be a live handle and `out` valid for writing.
 */
enum TcStatus tc_table_json(const struct TcField *field, enum TcKind kind, uint32_t n, char **out);

/**
 * Writes the brute-force `(t, s)` table as JSON to `*out`. A zero cap
 * selects the default budget.
 *
 * # Safety
 * `field` must be a live handle and `out` valid for writing.
 */
enum TcStatus tc_oracle_table_json(const struct TcField *field,
                                   enum TcKind kind,
                                   uint32_t n,
                                   uint64_t max_points,
                                   uint64_t max_poly,
                                   char **out);

/**
 * Runs the verification grid for base fields up to GF(2^max_k) and writes
 * the JSON report to `*out`; `*passed` is set to whether every check
 * passed. A zero cap selects the default budget.
 *
 * # Safety
 * `out` and `passed` must be valid for writing.
 */
enum TcStatus tc_verify_json(uint32_t max_k,
                             uint64_t max_points,
                             uint64_t max_poly,
                             char **out,
                             bool *passed);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `text` must be null or a string from this library not yet freed.
 */
void tc_string_free(char *text);

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *tc_last_error(void);

/**
 * Status as a static string, e.g. "budget exceeded".
 */
const char *tc_status_name(enum TcStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRACECOUNT_H */
