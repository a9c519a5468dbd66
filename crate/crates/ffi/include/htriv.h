#ifndef HTRIV_H
#define HTRIV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  HT_STATUS_OK = 0,
  HT_STATUS_NULL_POINTER = 1,
  HT_STATUS_INVALID_UTF8 = 2,
  HT_STATUS_PARSE = 3,
  HT_STATUS_INVALID_ARGUMENT = 4,
  HT_STATUS_DOMAIN = 5,
  HT_STATUS_ORACLE_DISAGREEMENT = 6,
  HT_STATUS_PANIC = 7,
} HtStatus;

/**
 * A validated stacky fan.
 */
typedef struct HtFan HtFan;

/**
 * A Picard group together with its fan.
 */
typedef struct HtPicard HtPicard;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next library call on this thread.
 */
const char *htriv_last_error(void);

/**
 * Static version string.
 */
const char *htriv_version(void);

/**
 * Build a fan from `n` vectors stored as `coords[2i], coords[2i+1]`.
 *
 * # Safety
 * `coords` must point to `2 * n` readable values and `out` must be writable.
 */
HtStatus htriv_fan_new(const int64_t *coords, size_t n, HtFan **out);

/**
 * Parse fan-file JSON text.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` must be writable.
 */
HtStatus htriv_fan_from_json(const char *json, HtFan **out);

/**
 * # Safety
 * `fan` must come from this library and not be used afterwards. NULL is ignored.
 */
void htriv_fan_free(HtFan *fan);

/**
 * Number of rays, or 0 for NULL.
 *
 * # Safety
 * `fan` must be NULL or a live handle.
 */
size_t htriv_fan_ray_count(const HtFan *fan);

/**
 * Whether the fan has a pair of opposite rays, i.e. infinitely many H-trivial classes.
 *
 * # Safety
 * `fan` must be a live handle and `out` writable.
 */
HtStatus htriv_fan_is_infinite(const HtFan *fan, bool *out);

/**
 * Picard group in the fan file's basis if it had one, else the default basis.
 *
 * # Safety
 * `fan` must be a live handle and `out` writable.
 */
HtStatus htriv_picard_new(const HtFan *fan, HtPicard **out);

/**
 * Picard group with the divisors at 1-based ray indices `basis[0..len]` as coordinates.
 *
 * # Safety
 * `fan` must be a live handle, `basis` must hold `len` values and `out` be writable.
 */
HtStatus htriv_picard_with_basis(const HtFan *fan, const size_t *basis, size_t len, HtPicard **out);

/**
 * # Safety
 * `pic` must come from this library and not be used afterwards. NULL is ignored.
 */
void htriv_picard_free(HtPicard *pic);

/**
 * Free rank, or 0 for NULL.
 *
 * # Safety
 * `pic` must be NULL or a live handle.
 */
size_t htriv_picard_free_rank(const HtPicard *pic);

/**
 * Number of torsion invariants, or 0 for NULL.
 *
 * # Safety
 * `pic` must be NULL or a live handle.
 */
size_t htriv_picard_torsion_count(const HtPicard *pic);

/**
 * Cohomology dimensions h0, h1, h2 of a class written like "(1,0,-1)".
 *
 * # Safety
 * `pic` must be a live handle, `class_text` NUL-terminated and `out` hold 3 values.
 */
HtStatus htriv_cohomology(const HtPicard *pic, const char *class_text, uint64_t *out);

/**
 * Whether a class is H-trivial. With `cross_check`, both oracles run and a
 * disagreement returns `HT_STATUS_ORACLE_DISAGREEMENT`.
 *
 * # Safety
 * `pic` must be a live handle, `class_text` NUL-terminated and `out` writable.
 */
HtStatus htriv_is_h_trivial(const HtPicard *pic,
                            const char *class_text,
                            bool cross_check,
                            bool *out);

/**
 * Classification report as JSON (`htriv-report/1`). `radius` is an integer
 * or `p/q`. Release the string with `htriv_string_free`.
 *
 * # Safety
 * `pic` must be a live handle, `radius` NUL-terminated and `out` writable.
 */
HtStatus htriv_classify_json(const HtPicard *pic, const char *radius, bool certify, char **out);

/**
 * Whether the group's fan has infinitely many H-trivial classes.
 *
 * # Safety
 * `pic` must be NULL or a live handle.
 */
bool htriv_picard_is_infinite(const HtPicard *pic);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. NULL is ignored.
 */
void htriv_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HTRIV_H */
