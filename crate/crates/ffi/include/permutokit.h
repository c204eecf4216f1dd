#ifndef PERMUTOKIT_H
#define PERMUTOKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by every entry point.
 */
typedef enum PkStatus {
  PK_STATUS_OK = 0,
  /**
   * The operation ran and reported a failed law.
   */
  PK_STATUS_LAW_VIOLATION = 1,
  /**
   * Malformed JSON, a failed precondition or an unknown name.
   */
  PK_STATUS_INVALID = 2,
  PK_STATUS_NULL_POINTER = 3,
  PK_STATUS_UTF8 = 4,
  PK_STATUS_PANIC = 5,
} PkStatus;

/**
 * An integer-valued Boolean function.
 */
typedef struct PkBooleanFunction PkBooleanFunction;

/**
 * A set composition.
 */
typedef struct PkComposition PkComposition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *pk_last_error_message(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed. Null is ignored.
 */
void pk_string_free(char *s);

/**
 * Library version as a static string.
 */
const char *pk_version(void);

/**
 * Runs one operation exactly as `permutokit <group> <op>` would, with
 * `input_json` in place of stdin (ignored by `opens check-indexing`).
 * On [`PkStatus::Ok`] or [`PkStatus::LawViolation`], `*out` receives the
 * JSON document the command line prints.
 *
 * # Safety
 * String arguments must be null or NUL-terminated; `out` must be writable.
 */
enum PkStatus pk_run(const char *group,
                     const char *op,
                     const char *input_json,
                     uint32_t bound,
                     size_t size,
                     char **out);

/**
 * Runs the law harness on `instance` (`sigma`, `o-bullet`, `bf`, `points`,
 * `co` or `cbf`) over a ground set of `size` labels, writing the report
 * document to `*out`.
 *
 * # Safety
 * `instance` must be null or NUL-terminated; `out` must be writable.
 */
enum PkStatus pk_check(const char *instance,
                       size_t size,
                       uint64_t seed,
                       uint64_t budget,
                       bool mutate,
                       char **out);

/**
 * Parses a composition such as `[[1],[2,3]]`.
 *
 * # Safety
 * `json` must be null or NUL-terminated; `out` must be writable.
 */
enum PkStatus pk_composition_from_json(const char *json, struct PkComposition **out);

/**
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum PkStatus pk_composition_to_json(const struct PkComposition *c, char **out);

/**
 * Number of lumps.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum PkStatus pk_composition_len(const struct PkComposition *c, size_t *out);

/**
 * The Tits product `FG`, as a new handle.
 *
 * # Safety
 * `f` and `g` must be live handles; `out` must be writable.
 */
enum PkStatus pk_composition_tits(const struct PkComposition *f,
                                  const struct PkComposition *g,
                                  struct PkComposition **out);

/**
 * Whether `g ≤ f`, i.e. `g` merges contiguous lumps of `f`.
 *
 * # Safety
 * `g` and `f` must be live handles; `out` must be writable.
 */
enum PkStatus pk_composition_leq(const struct PkComposition *g,
                                 const struct PkComposition *f,
                                 bool *out);

/**
 * # Safety
 * `c` must come from this library and not have been freed. Null is ignored.
 */
void pk_composition_free(struct PkComposition *c);

/**
 * Parses `{"ground": [...], "values": {...}}`.
 *
 * # Safety
 * `json` must be null or NUL-terminated; `out` must be writable.
 */
enum PkStatus pk_boolfun_from_json(const char *json, struct PkBooleanFunction **out);

/**
 * # Safety
 * `z` must be a live handle; `out` must be writable.
 */
enum PkStatus pk_boolfun_to_json(const struct PkBooleanFunction *z, char **out);

/**
 * The product `z1 | z2` over the disjoint union of the grounds.
 *
 * # Safety
 * `z1` and `z2` must be live handles; `out` must be writable.
 */
enum PkStatus pk_boolfun_mul(const struct PkBooleanFunction *z1,
                             const struct PkBooleanFunction *z2,
                             struct PkBooleanFunction **out);

/**
 * # Safety
 * `z` must be a live handle; `out` must be writable.
 */
enum PkStatus pk_boolfun_is_submodular(const struct PkBooleanFunction *z, bool *out);

/**
 * Number of integer points of the polytope of `z`.
 *
 * # Safety
 * `z` must be a live handle; `out` must be writable.
 */
enum PkStatus pk_sections_count(const struct PkBooleanFunction *z, size_t *out);

/**
 * # Safety
 * `z` must come from this library and not have been freed. Null is ignored.
 */
void pk_boolfun_free(struct PkBooleanFunction *z);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PERMUTOKIT_H */
