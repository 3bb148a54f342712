#ifndef INDEPOLY_H
#define INDEPOLY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IpStatus {
  IP_STATUS_OK = 0,
  IP_STATUS_NULL_POINTER = 1,
  IP_STATUS_INVALID_ARGUMENT = 2,
  IP_STATUS_PARSE = 3,
  IP_STATUS_NOT_CHORDAL = 4,
  IP_STATUS_RESOURCE_LIMIT = 5,
  IP_STATUS_INSUFFICIENT_DATA = 6,
  IP_STATUS_ARITHMETIC = 7,
  IP_STATUS_BUFFER_TOO_SMALL = 8,
  IP_STATUS_PANIC = 9,
} IpStatus;

/**
 * Opaque graph handle.
 */
typedef struct IpGraph IpGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *ip_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void ip_string_free(char *s);

/**
 * Graph on `n` vertices with no edges.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum IpStatus ip_graph_new(size_t n, struct IpGraph **out);

/**
 * Parses an edge list (`n` on the first line, then `u v` per line) or a
 * graph6 string.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum IpStatus ip_graph_parse(const char *text, struct IpGraph **out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum IpStatus ip_graph_cycle(size_t n, struct IpGraph **out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum IpStatus ip_graph_path(size_t n, struct IpGraph **out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum IpStatus ip_graph_complete(size_t n, struct IpGraph **out);

/**
 * # Safety
 * `g` must be null or a graph returned by this library, not yet freed.
 */
void ip_graph_free(struct IpGraph *g);

/**
 * # Safety
 * `g` must be a valid graph.
 */
enum IpStatus ip_graph_add_edge(struct IpGraph *g, size_t u, size_t v);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a valid graph.
 */
size_t ip_graph_vertex_count(const struct IpGraph *g);

/**
 * The multivariate independence polynomial, e.g. `1+x1+x2`.
 *
 * # Safety
 * `g` must be a valid graph and `out` a valid pointer.
 */
enum IpStatus ip_independence_polynomial(const struct IpGraph *g, char **out);

/**
 * # Safety
 * `g` must be a valid graph and `out` a valid pointer.
 */
enum IpStatus ip_is_chordal(const struct IpGraph *g, bool *out);

/**
 * Writes a perfect elimination ordering into `buf` and sets `is_ordering`,
 * or, for a non-chordal graph, the vertices of an induced chordless cycle
 * with `is_ordering` false. `len` receives the number of entries; if it
 * exceeds `cap`, nothing is written and `IP_STATUS_BUFFER_TOO_SMALL` is
 * returned.
 *
 * # Safety
 * `buf` must have room for `cap` entries; `len` and `is_ordering` must be
 * valid pointers.
 */
enum IpStatus ip_find_peo(const struct IpGraph *g,
                          size_t *buf,
                          size_t cap,
                          size_t *len,
                          bool *is_ordering);

/**
 * Coefficients of `I(G; x)^(-s)` on the box `0 <= m_i <= order`, as JSON.
 * `s` is a rational such as `"1"` or `"-1/2"`.
 *
 * # Safety
 * `g` must be a valid graph, `s` a NUL-terminated string, `out` a valid
 * pointer.
 */
enum IpStatus ip_expand_json(const struct IpGraph *g, const char *s, uint32_t order, char **out);

/**
 * Horn-ratio fit of the unsigned coefficients of `1/I(G; -x)` with
 * numerator and denominator degree up to `degree`, as a JSON report.
 *
 * # Safety
 * `g` must be a valid graph and `out` a valid pointer.
 */
enum IpStatus ip_horn_check_json(const struct IpGraph *g,
                                 uint32_t order,
                                 uint32_t degree,
                                 char **out);

/**
 * Number of traces with content `m` (one entry per vertex), in decimal.
 *
 * # Safety
 * `g` must be a valid graph, `content` must point to `len` entries, `out`
 * must be a valid pointer.
 */
enum IpStatus ip_count_traces(const struct IpGraph *g,
                              const uint32_t *content,
                              size_t len,
                              char **out);

/**
 * The de Bruijn sum `S(n, k)` in decimal.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum IpStatus ip_debruijn(uint32_t n, uint32_t k, char **out);

/**
 * Runs the identity suite; `all_passed` reports whether every check held.
 *
 * # Safety
 * `all_passed` must be a valid pointer.
 */
enum IpStatus ip_verify_identities(bool *all_passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INDEPOLY_H */
