#ifndef TREESPEC_H
#define TREESPEC_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TsStatus {
  TS_STATUS_OK = 0,
  TS_STATUS_NULL_POINTER = 1,
  TS_STATUS_INVALID_UTF8 = 2,
  TS_STATUS_PARSE_ERROR = 3,
  TS_STATUS_INVALID_TREE = 4,
  TS_STATUS_INVALID_ARGUMENT = 5,
  TS_STATUS_EXHAUSTED = 6,
  TS_STATUS_PANIC = 7,
} TsStatus;

typedef enum TsMatrixKind {
  TS_MATRIX_KIND_ADJACENCY = 0,
  TS_MATRIX_KIND_LAPLACIAN = 1,
} TsMatrixKind;

/**
 * Opaque stream of free trees of one order.
 */
typedef struct TsEnumerator TsEnumerator;

/**
 * Opaque tree handle.
 */
typedef struct TsTree TsTree;

/**
 * Eigenvalues greater than, less than and equal to a threshold.
 */
typedef struct TsCounts {
  size_t greater;
  size_t less;
  size_t multiplicity;
} TsCounts;

typedef struct TsConjecture {
  bool holds;
  size_t m;
  size_t threshold;
} TsConjecture;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, as a static NUL-terminated string.
 */
const char *ts_version(void);

/**
 * Message for the last failed call on this thread, or NULL. Valid until
 * the next call into the library from the same thread.
 */
const char *ts_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void ts_string_free(char *s);

/**
 * Parses a line-oriented edge list (`u v` per line, `#` comments, ids
 * 0-based or 1-based).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum TsStatus ts_tree_from_edge_list(const char *text, struct TsTree **out);

/**
 * Builds a tree on `n` vertices from `m` edges `(us[i], vs[i])`.
 *
 * # Safety
 * `us` and `vs` must point to `m` readable elements; `out` must be writable.
 */
enum TsStatus ts_tree_from_edges(size_t n,
                                 const size_t *us,
                                 const size_t *vs,
                                 size_t m,
                                 struct TsTree **out);

/**
 * Builds a tree from a canonical level sequence such as `"0,1,2,1"`.
 *
 * # Safety
 * `code` must be a NUL-terminated string; `out` must be writable.
 */
enum TsStatus ts_tree_from_code(const char *code, struct TsTree **out);

/**
 * # Safety
 * `tree` must be NULL or a handle from this library, not yet freed.
 */
void ts_tree_free(struct TsTree *tree);

/**
 * Vertex count, or 0 for NULL.
 *
 * # Safety
 * `tree` must be NULL or a live handle.
 */
size_t ts_tree_order(const struct TsTree *tree);

/**
 * Canonical code of the tree; free the result with [`ts_string_free`].
 *
 * # Safety
 * `tree` must be a live handle; `out` must be writable.
 */
enum TsStatus ts_tree_canonical_code(const struct TsTree *tree, char **out);

/**
 * Eigenvalue counts relative to `alpha`.
 *
 * # Safety
 * `tree` must be a live handle, `alpha` a NUL-terminated string and `out`
 * writable.
 */
enum TsStatus ts_count(const struct TsTree *tree,
                       enum TsMatrixKind kind,
                       const char *alpha,
                       struct TsCounts *out);

/**
 * Number of eigenvalues in `[a, b)`.
 *
 * # Safety
 * `tree` must be a live handle, `a` and `b` NUL-terminated strings and
 * `out` writable.
 */
enum TsStatus ts_m_interval(const struct TsTree *tree,
                            enum TsMatrixKind kind,
                            const char *a,
                            const char *b,
                            size_t *out);

/**
 * Diagonalizes `M + xI` rooted at `root` and writes a JSON object with the
 * per-vertex values and the inertia. Free the result with
 * [`ts_string_free`].
 *
 * # Safety
 * `tree` must be a live handle, `x` a NUL-terminated string and `out_json`
 * writable.
 */
enum TsStatus ts_diagonalize(const struct TsTree *tree,
                             enum TsMatrixKind kind,
                             const char *x,
                             size_t root,
                             char **out_json);

/**
 * Whether at least `ceil(n/2)` Laplacian eigenvalues lie below the average
 * degree. Needs at least 2 vertices.
 *
 * # Safety
 * `tree` must be a live handle and `out` writable.
 */
enum TsStatus ts_check_conjecture(const struct TsTree *tree, struct TsConjecture *out);

/**
 * Starts enumerating the free trees of order `n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum TsStatus ts_enumerator_new(size_t n, struct TsEnumerator **out);

/**
 * Writes the next tree to `out`, or returns `TS_STATUS_EXHAUSTED` once the
 * stream ends.
 *
 * # Safety
 * `e` must be a live enumerator and `out` writable.
 */
enum TsStatus ts_enumerator_next(struct TsEnumerator *e, struct TsTree **out);

/**
 * # Safety
 * `e` must be NULL or an enumerator from this library, not yet freed.
 */
void ts_enumerator_free(struct TsEnumerator *e);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TREESPEC_H */
