#ifndef INVDEG_H
#define INVDEG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every entry point.
 */
typedef enum InvdegStatus {
  INVDEG_STATUS_OK = 0,
  INVDEG_STATUS_NULL_POINTER = 1,
  INVDEG_STATUS_INVALID_ARGUMENT = 2,
  INVDEG_STATUS_PARSE = 3,
  INVDEG_STATUS_DISCONNECTED = 4,
  INVDEG_STATUS_NOT_PLANAR = 5,
  INVDEG_STATUS_PRECONDITION = 6,
  INVDEG_STATUS_UTF8 = 7,
  INVDEG_STATUS_PANIC = 8,
} InvdegStatus;

/**
 * Opaque graph handle.
 */
typedef struct InvdegGraph InvdegGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *invdeg_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void invdeg_string_free(char *s);

/**
 * Builds a graph on `n` vertices from `m` edges stored as `2m`
 * consecutive endpoints.
 *
 * # Safety
 * `edges` must point to `2 * m` readable `size_t` values (or be null when
 * `m == 0`); `out` must be writable.
 */
enum InvdegStatus invdeg_graph_new(size_t n,
                                   const size_t *edges,
                                   size_t m,
                                   struct InvdegGraph **out);

/**
 * Parses the text format: a header `n m` then `m` lines `u v`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum InvdegStatus invdeg_graph_from_text(const char *text, struct InvdegGraph **out);

/**
 * Parses a graph6 string.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum InvdegStatus invdeg_graph_from_graph6(const char *text, struct InvdegGraph **out);

/**
 * Renders a graph in the text format.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum InvdegStatus invdeg_graph_to_text(const struct InvdegGraph *g, char **out);

/**
 * Renders a graph as graph6.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum InvdegStatus invdeg_graph_to_graph6(const struct InvdegGraph *g, char **out);

/**
 * Releases a graph handle. Null is ignored.
 *
 * # Safety
 * `g` must come from this library and not have been freed.
 */
void invdeg_graph_free(struct InvdegGraph *g);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t invdeg_graph_vertex_count(const struct InvdegGraph *g);

/**
 * Edge count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t invdeg_graph_edge_count(const struct InvdegGraph *g);

/**
 * Diameter of a connected graph.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum InvdegStatus invdeg_graph_diameter(const struct InvdegGraph *g, size_t *out);

/**
 * Inverse degree as a fraction string `"p/q"`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum InvdegStatus invdeg_graph_inverse_degree(const struct InvdegGraph *g, char **out);

/**
 * Planarity test; the verdict is certified by an embedding or a
 * Kuratowski subgraph before it is returned.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum InvdegStatus invdeg_graph_is_planar(const struct InvdegGraph *g, bool *out);

/**
 * `L_n` for even `n >= 4`.
 *
 * # Safety
 * `out` must be writable.
 */
enum InvdegStatus invdeg_gen_l(size_t n, struct InvdegGraph **out);

/**
 * `T_n` for `n >= 6` divisible by 3.
 *
 * # Safety
 * `out` must be writable.
 */
enum InvdegStatus invdeg_gen_t(size_t n, struct InvdegGraph **out);

/**
 * The path on `n >= 1` vertices.
 *
 * # Safety
 * `out` must be writable.
 */
enum InvdegStatus invdeg_gen_path(size_t n, struct InvdegGraph **out);

/**
 * `L_{2n/3}` with a pendant path of `n/3` vertices.
 *
 * # Safety
 * `out` must be writable.
 */
enum InvdegStatus invdeg_gen_l_with_tail(size_t n, struct InvdegGraph **out);

/**
 * Triangulated chain with a pendant path, aimed at `n` vertices and `m`
 * edges.
 *
 * # Safety
 * `out` must be writable.
 */
enum InvdegStatus invdeg_gen_t_with_tail(size_t n, size_t m, struct InvdegGraph **out);

/**
 * `K5` minus one edge.
 *
 * # Safety
 * `out` must be writable.
 */
enum InvdegStatus invdeg_gen_k5_minus(struct InvdegGraph **out);

/**
 * The four diameter bounds with exact slacks, as JSON.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum InvdegStatus invdeg_check_bounds_json(const struct InvdegGraph *g, char **out);

/**
 * (★) grid verification up to `x_max`, as JSON.
 *
 * # Safety
 * `out` must be writable.
 */
enum InvdegStatus invdeg_certify_star_json(uint64_t x_max, char **out);

/**
 * (★) tail verification up to `x_max`, as JSON.
 *
 * # Safety
 * `out` must be writable.
 */
enum InvdegStatus invdeg_certify_tail_json(uint64_t x_max, char **out);

/**
 * (✠) values for the 14 pairs, as JSON.
 *
 * # Safety
 * `out` must be writable.
 */
enum InvdegStatus invdeg_certify_maltese_json(char **out);

/**
 * Certification digraph and its shortest path, as JSON.
 *
 * # Safety
 * `out` must be writable.
 */
enum InvdegStatus invdeg_certify_dp_json(char **out);

/**
 * Exhaustive small-graph verification for `1 <= n_max <= 9`, as JSON.
 *
 * # Safety
 * `out` must be writable.
 */
enum InvdegStatus invdeg_search_json(size_t n_max, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INVDEG_H */
