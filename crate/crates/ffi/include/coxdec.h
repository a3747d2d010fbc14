#ifndef COXDEC_H
#define COXDEC_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CoxdecStatus {
  COXDEC_STATUS_OK = 0,
  COXDEC_STATUS_NULL_POINTER = 1,
  COXDEC_STATUS_INVALID_UTF8 = 2,
  COXDEC_STATUS_INVALID_INPUT = 3,
  COXDEC_STATUS_BOUND_EXCEEDED = 4,
  COXDEC_STATUS_PANIC = 5,
} CoxdecStatus;

// Opaque Coxeter matrix.
typedef struct CoxdecMatrix CoxdecMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a matrix document.  Release the handle with `coxdec_matrix_free`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum CoxdecStatus coxdec_matrix_from_json(const char *json, struct CoxdecMatrix **out);

// # Safety
// `m` must be null or a handle from `coxdec_matrix_from_json` not yet freed.
void coxdec_matrix_free(struct CoxdecMatrix *m);

// Number of generators, or 0 for a null handle.
//
// # Safety
// `m` must be null or a live handle.
size_t coxdec_matrix_rank(const struct CoxdecMatrix *m);

// Inertia of the Gram matrix.
//
// # Safety
// `m` must be a live handle; the outputs must be valid pointers.
enum CoxdecStatus coxdec_signature(const struct CoxdecMatrix *m,
                                   size_t *positive,
                                   size_t *zero,
                                   size_t *negative);

// `{"type", "components", "signature"}` for the matrix.
//
// # Safety
// `m` must be a live handle and `out` a valid pointer.
enum CoxdecStatus coxdec_classify_json(const struct CoxdecMatrix *m, char **out);

// Facet-count verdict for the subgroup described by `subgroup_json`,
// searching at most `max_index` chambers.
//
// # Safety
// `m` must be a live handle, `subgroup_json` NUL-terminated, `out` valid.
enum CoxdecStatus coxdec_theorem_check_json(const struct CoxdecMatrix *m,
                                            const char *subgroup_json,
                                            size_t max_index,
                                            char **out);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void coxdec_string_free(char *s);

// Message for the last failed call on this thread, or null.  Valid until the
// next call into the library from the same thread.
const char *coxdec_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COXDEC_H */
