#ifndef POPDIST_H
#define POPDIST_H

/* Generated by cbindgen from popdist-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every fallible call.
 */
typedef enum {
  POPDIST_STATUS_OK = 0,
  POPDIST_STATUS_NULL_POINTER = 1,
  POPDIST_STATUS_INVALID_ARGUMENT = 2,
  POPDIST_STATUS_LIMIT_EXCEEDED = 3,
} PopdistStatus;

/**
 * Which series the solver should produce.
 */
typedef enum {
  POPDIST_MODE_FULL = 0,
  POPDIST_MODE_UV = 1,
  POPDIST_MODE_COUNTING = 2,
} PopdistMode;

/**
 * Opaque handle around a truncated distribution series.
 */
typedef struct PopdistSeries PopdistSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null after a
 * success. The pointer stays valid until the next call on the same thread.
 */
const char *popdist_last_error(void);

/**
 * Solve the functional-equation system for F_k at the given truncation
 * order and mode, producing a fresh series handle in `*out`.
 *
 * # Safety
 * `out` must be null or point to writable storage for one pointer.
 */
PopdistStatus popdist_solve(uintptr_t k, uintptr_t order, PopdistMode mode, PopdistSeries **out);

/**
 * Expand a closed form by name ("F2", "F4_xu", "S_tpq", ...).
 *
 * # Safety
 * `id` must point to a valid NUL-terminated string.
 */
PopdistStatus popdist_closed_expand(const char *id, uintptr_t order, PopdistSeries **out);

/**
 * Brute-force distribution series for the class avoiding the flat POP of
 * length k.
 *
 * # Safety
 * `out` must be null or point to writable storage for one pointer.
 */
PopdistStatus popdist_oracle_series(uintptr_t k, uintptr_t order, PopdistSeries **out);

/**
 * Number of stored monomials.
 *
 * # Safety
 * `series` must be a live handle from this library.
 */
uintptr_t popdist_series_num_terms(const PopdistSeries *series);

/**
 * Canonical JSON term list; caller frees with [`popdist_string_free`].
 *
 * # Safety
 * `series` must be a live handle from this library.
 */
char *popdist_series_to_json(const PopdistSeries *series);

/**
 * Canonical text rendering; caller frees with [`popdist_string_free`].
 *
 * # Safety
 * `series` must be a live handle from this library.
 */
char *popdist_series_to_text(const PopdistSeries *series);

/**
 * Release a series handle. Null is ignored.
 *
 * # Safety
 * `series` must be a handle from this library, not yet freed.
 */
void popdist_series_free(PopdistSeries *series);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `text` must originate from this library, not yet freed.
 */
void popdist_string_free(char *text);

/**
 * The n-th Schröder number as a decimal string; caller frees with
 * [`popdist_string_free`].
 */
char *popdist_schroder_decimal(uintptr_t n);

/**
 * Number of separable permutations of length n avoiding the flat POP of
 * length k; pass k = 0 for the unrestricted separable class.
 *
 * # Safety
 * `out` must be null or point to writable storage for one u64.
 */
PopdistStatus popdist_class_count(uintptr_t n, uintptr_t k, uint64_t *out);

/**
 * Run a named verification suite ("closed-vs-oracle", ..., "all"),
 * storing the number of failed checks in `*failures`.
 *
 * # Safety
 * `suite` must point to a valid NUL-terminated string.
 */
PopdistStatus popdist_verify(const char *suite, uintptr_t max_n, uintptr_t *failures);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POPDIST_H */
