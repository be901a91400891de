#ifndef TRIPOSLAB_H
#define TRIPOSLAB_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Opaque implicative algebra.
 */
typedef struct TlAlgebra TlAlgebra;

/**
 * Opaque coded tripos.
 */
typedef struct TlTripos TlTripos;

/**
 * Status codes.
 */
typedef int32_t TlStatus;

#define TL_OK 0

#define TL_NULL_POINTER 1

#define TL_INVALID_UTF8 2

#define TL_PARSE_ERROR 3

#define TL_INVALID_INPUT 4

#define TL_WRONG_KIND 5

#define TL_TOO_LARGE 6

#define TL_NOT_VALID_ALGEBRA 7

#define TL_PANIC 99

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *tl_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void tl_string_free(char *s);

/**
 * Parses a tripos fixture.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
TlStatus tl_tripos_from_json(const char *json, struct TlTripos **out);

/**
 * # Safety
 * `t` must be null or a handle from this library, not yet freed.
 */
void tl_tripos_free(struct TlTripos *t);

/**
 * Parses an algebra fixture.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
TlStatus tl_algebra_from_json(const char *json, struct TlAlgebra **out);

/**
 * # Safety
 * `a` must be null or a handle from this library, not yet freed.
 */
void tl_algebra_free(struct TlAlgebra *a);

/**
 * Serializes a tripos as a fixture.
 *
 * # Safety
 * `t` must be a live handle; `name` NUL-terminated; `out` writable.
 */
TlStatus tl_tripos_to_json(const struct TlTripos *t, const char *name, char **out);

/**
 * Serializes an algebra as a fixture.
 *
 * # Safety
 * `a` must be a live handle; `name` NUL-terminated; `out` writable.
 */
TlStatus tl_algebra_to_json(const struct TlAlgebra *a, const char *name, char **out);

/**
 * Runs the law suite; writes the JSON report.
 *
 * # Safety
 * `t` must be a live handle; `out` writable.
 */
TlStatus tl_tripos_run_laws(const struct TlTripos *t,
                            size_t max_ctx,
                            size_t samples,
                            uint64_t seed,
                            char **out);

/**
 * Extracts the implicative algebra of a tripos.
 *
 * # Safety
 * `t` must be a live handle; `out` writable.
 */
TlStatus tl_tripos_extract(const struct TlTripos *t, struct TlAlgebra **out);

/**
 * Isomorphism certificate followed by the code-transfer identities when
 * `|Σ|` allows; writes the JSON report.
 *
 * # Safety
 * `t` must be a live handle; `out` writable.
 */
TlStatus tl_tripos_iso(const struct TlTripos *t,
                       size_t max_ctx,
                       size_t samples,
                       uint64_t seed,
                       char **out);

/**
 * Structure axioms and separator conditions; writes the JSON report.
 *
 * # Safety
 * `a` must be a live handle; `out` writable.
 */
TlStatus tl_algebra_validate(const struct TlAlgebra *a, char **out);

/**
 * The tripos induced by a valid algebra.
 *
 * # Safety
 * `a` must be a live handle; `out` writable.
 */
TlStatus tl_algebra_induce(const struct TlAlgebra *a, struct TlTripos **out);

/**
 * Induce, extract and certify against the induced tripos; writes the JSON report.
 *
 * # Safety
 * `a` must be a live handle; `out` writable.
 */
TlStatus tl_algebra_roundtrip(const struct TlAlgebra *a,
                              size_t max_ctx,
                              size_t samples,
                              uint64_t seed,
                              char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TRIPOSLAB_H */
