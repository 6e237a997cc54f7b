#ifndef MEETDET_H
#define MEETDET_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum MeetdetStatus {
  MEETDET_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  MEETDET_STATUS_NULL_ARGUMENT = 1,
  /**
   * Malformed input text or a string that is not UTF-8.
   */
  MEETDET_STATUS_PARSE = 2,
  /**
   * A method precondition, enumeration guard or size check failed.
   */
  MEETDET_STATUS_PRECONDITION = 3,
  /**
   * The library panicked; this is a bug.
   */
  MEETDET_STATUS_INTERNAL = 4,
} MeetdetStatus;

typedef struct MeetdetGrounded MeetdetGrounded;

typedef struct MeetdetHypermatrix MeetdetHypermatrix;

typedef struct MeetdetLattice MeetdetLattice;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null if it
 * succeeded. The caller frees the copy with `meetdet_string_free`.
 */
char *meetdet_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed; null is a no-op.
 */
void meetdet_string_free(char *s);

/**
 * Parses poset text (`poset <n>`, `label`, `cover` lines).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum MeetdetStatus meetdet_lattice_parse(const char *text, struct MeetdetLattice **out);

/**
 * # Safety
 * `l` must come from `meetdet_lattice_parse` and not have been freed.
 */
void meetdet_lattice_free(struct MeetdetLattice *l);

/**
 * # Safety
 * `l` must be a live handle; `out` must be writable.
 */
enum MeetdetStatus meetdet_lattice_len(const struct MeetdetLattice *l, size_t *out);

/**
 * # Safety
 * `l` must be a live handle; `out` must be writable.
 */
enum MeetdetStatus meetdet_lattice_is_meet_semilattice(const struct MeetdetLattice *l, bool *out);

/**
 * Index of the meet of `a` and `b`.
 *
 * # Safety
 * `l` must be a live handle; `out` must be writable.
 */
enum MeetdetStatus meetdet_lattice_meet(const struct MeetdetLattice *l,
                                        size_t a,
                                        size_t b,
                                        size_t *out);

/**
 * `μ(x, y)`.
 *
 * # Safety
 * `l` must be a live handle; `out` must be writable.
 */
enum MeetdetStatus meetdet_lattice_mobius(const struct MeetdetLattice *l,
                                          size_t x,
                                          size_t y,
                                          int64_t *out);

/**
 * Parses hypermatrix text (`hypermatrix <n> <k>` then `n^k` scalars).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum MeetdetStatus meetdet_hypermatrix_parse(const char *text, struct MeetdetHypermatrix **out);

/**
 * # Safety
 * `m` must come from `meetdet_hypermatrix_parse` and not have been freed.
 */
void meetdet_hypermatrix_free(struct MeetdetHypermatrix *m);

/**
 * Evaluates by `method` (`brute`, `expand`, `cayley`, `det1`) and writes
 * the canonical value text to `value`. `fmap` is `"sign"`, `"one"`, a
 * table body, or null for `"sign"`.
 *
 * # Safety
 * `m` must be a live handle; string arguments NUL-terminated; `value`
 * writable.
 */
enum MeetdetStatus meetdet_hypermatrix_eval(const struct MeetdetHypermatrix *m,
                                            const char *method,
                                            const char *fmap,
                                            bool force,
                                            char **value);

/**
 * Parses a grounded function. The poset is given as text; the path in
 * the `gf` header line is ignored.
 *
 * # Safety
 * Both strings must be NUL-terminated; `out` must be writable.
 */
enum MeetdetStatus meetdet_grounded_parse(const char *gf_text,
                                          const char *poset_text,
                                          struct MeetdetGrounded **out);

/**
 * # Safety
 * `g` must come from `meetdet_grounded_parse` and not have been freed.
 */
void meetdet_grounded_free(struct MeetdetGrounded *g);

/**
 * Evaluates the order-`k` meet hypermatrix of `g` by any method name.
 *
 * # Safety
 * `g` must be a live handle; string arguments NUL-terminated; `value`
 * writable.
 */
enum MeetdetStatus meetdet_grounded_eval(const struct MeetdetGrounded *g,
                                         size_t k,
                                         const char *method,
                                         const char *fmap,
                                         bool force,
                                         char **value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MEETDET_H */
