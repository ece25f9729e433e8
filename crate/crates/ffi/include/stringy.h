#ifndef STRINGY_H
#define STRINGY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum StringyStatus {
  STRINGY_STATUS_OK = 0,
  STRINGY_STATUS_NULL_POINTER = 1,
  STRINGY_STATUS_INVALID_ARGUMENT = 2,
  STRINGY_STATUS_INVALID_N = 3,
  STRINGY_STATUS_METHOD_DISAGREEMENT = 4,
  STRINGY_STATUS_INTERNAL = 5,
} StringyStatus;

/**
 * Opaque exact polynomial.
 */
typedef struct StringyPoly StringyPoly;

/**
 * Opaque polynomiality verdict.
 */
typedef struct StringyVerdict StringyVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * `P(J^[n]; z)` for the abelian surface, `n >= 1`.
 */
enum StringyStatus stringy_hilb_poincare(size_t n, struct StringyPoly **out);

/**
 * `P(J^[n] x J^; z)`, `n >= 1`.
 */
enum StringyStatus stringy_jn_times_dual(size_t n, struct StringyPoly **out);

/**
 * E-polynomial of a stratum named like `D123` or `D2o`, `n >= 2`.
 *
 * # Safety
 * `id` must be a valid NUL-terminated string.
 */
enum StringyStatus stringy_stratum(const char *id, size_t n, struct StringyPoly **out);

/**
 * `N(z)`, the numerator of the singular contribution, `n >= 2`.
 */
enum StringyStatus stringy_numerator(size_t n, struct StringyPoly **out);

/**
 * Degree of a polynomial, `-1` for zero.
 *
 * # Safety
 * `p` must be a live handle or null.
 */
enum StringyStatus stringy_poly_degree(const struct StringyPoly *p, int64_t *out);

/**
 * Canonical text form, e.g. `1 - 4*z + 6*z^2`.
 *
 * # Safety
 * `p` must be a live handle or null.
 */
enum StringyStatus stringy_poly_to_text(const struct StringyPoly *p, char **out);

/**
 * JSON form `{"var":"z","coeffs":["1","-4",...]}`.
 *
 * # Safety
 * `p` must be a live handle or null.
 */
enum StringyStatus stringy_poly_to_json(const struct StringyPoly *p, char **out);

/**
 * # Safety
 * `p` must be null or a handle not yet freed.
 */
void stringy_poly_free(struct StringyPoly *p);

/**
 * Run all polynomiality methods for `n >= 2`.
 *
 * # Safety
 * `out` must be null or valid for a pointer write.
 */
enum StringyStatus stringy_verdict(size_t n, bool include_d2, struct StringyVerdict **out);

/**
 * # Safety
 * `v` must be a live handle or null.
 */
enum StringyStatus stringy_verdict_is_polynomial(const struct StringyVerdict *v, bool *out);

/**
 * The verdict report as JSON.
 *
 * # Safety
 * `v` must be a live handle or null.
 */
enum StringyStatus stringy_verdict_to_json(const struct StringyVerdict *v, char **out);

/**
 * # Safety
 * `v` must be null or a handle not yet freed.
 */
void stringy_verdict_free(struct StringyVerdict *v);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void stringy_string_free(char *s);

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call into the library.
 */
const char *stringy_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STRINGY_H */
