#ifndef SEIDEL_H
#define SEIDEL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SeidelStatus {
  SEIDEL_STATUS_OK = 0,
  SEIDEL_STATUS_NULL_POINTER = 1,
  SEIDEL_STATUS_INVALID_ARGUMENT = 2,
  SEIDEL_STATUS_PARSE = 3,
  SEIDEL_STATUS_DOMAIN = 4,
  SEIDEL_STATUS_BUFFER_TOO_SMALL = 5,
  SEIDEL_STATUS_PANIC = 6,
} SeidelStatus;

typedef enum SeidelKind {
  SEIDEL_KIND_ADJACENCY = 0,
  SEIDEL_KIND_LAPLACIAN = 1,
  SEIDEL_KIND_SIGNLESS = 2,
} SeidelKind;

/**
 * Opaque graph handle: a weighted digraph and its optional partition.
 */
typedef struct SeidelGraph SeidelGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *seidel_last_error_message(void);

/**
 * Parses a JSON graph document.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `out` must be writable.
 */
enum SeidelStatus seidel_graph_from_json(const char *json, struct SeidelGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library not yet freed.
 */
void seidel_graph_free(struct SeidelGraph *g);

/**
 * Number of vertices; 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t seidel_graph_order(const struct SeidelGraph *g);

/**
 * Number of stored directed edges, loops included; 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t seidel_graph_edge_count(const struct SeidelGraph *g);

/**
 * Canonical JSON document of the graph; free with [`seidel_string_free`].
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum SeidelStatus seidel_graph_to_json(const struct SeidelGraph *g, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void seidel_string_free(char *s);

/**
 * Seidel switch of the adjacency matrix using the graph's partition.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum SeidelStatus seidel_switch(const struct SeidelGraph *g, struct SeidelGraph **out);

/**
 * Laplacian or signless-Laplacian switch of a starlike graph; `kind` is a
 * [`SeidelKind`] value.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum SeidelStatus seidel_lq_switch(const struct SeidelGraph *g,
                                   uint32_t kind,
                                   struct SeidelGraph **out);

/**
 * Ascending spectrum of A, L or Q of a symmetric graph; `kind` is a
 * [`SeidelKind`] value.
 *
 * # Safety
 * `g` must be a live handle; `buf` must hold `len` doubles; `written`
 * must be writable.
 */
enum SeidelStatus seidel_spectrum(const struct SeidelGraph *g,
                                  uint32_t kind,
                                  double *buf,
                                  size_t len,
                                  size_t *written);

/**
 * von Neumann entropy (bits) of `L/tr(L)` or `Q/tr(Q)`; `kind` is
 * [`SeidelKind`] Laplacian or Signless.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum SeidelStatus seidel_entropy(const struct SeidelGraph *g, uint32_t kind, double *out);

/**
 * Operator Schmidt coefficients of `U_order` across `m x n`, descending.
 *
 * # Safety
 * `buf` must hold `len` doubles; `written` must be writable.
 */
enum SeidelStatus seidel_schmidt_coefficients(size_t order,
                                              size_t m,
                                              size_t n,
                                              double *buf,
                                              size_t len,
                                              size_t *written);

/**
 * `K_Sch` and `K_WZ` of `U_order` across `m x n`.
 *
 * # Safety
 * `k_sch` and `k_wz` must be writable.
 */
enum SeidelStatus seidel_operator_strength(size_t order,
                                           size_t m,
                                           size_t n,
                                           double *k_sch,
                                           double *k_wz);

/**
 * Strength table as CSV text; free with [`seidel_string_free`].
 *
 * # Safety
 * `out` must be writable.
 */
enum SeidelStatus seidel_strength_scan_csv(size_t max_order, bool include_blocks, char **out);

/**
 * Exhaustive isomorphism test for graphs of order at most 12.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum SeidelStatus seidel_is_isomorphic(const struct SeidelGraph *a,
                                       const struct SeidelGraph *b,
                                       bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEIDEL_H */
