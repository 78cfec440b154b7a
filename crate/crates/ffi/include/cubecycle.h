#ifndef CUBECYCLE_H
#define CUBECYCLE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Values 1 to 3 match the CLI exit codes.
 */
typedef enum CcStatus {
  CC_STATUS_OK = 0,
  CC_STATUS_VERIFICATION_FAILURE = 1,
  CC_STATUS_INVALID_PARAMETER = 2,
  CC_STATUS_RESOURCE_LIMIT = 3,
  CC_STATUS_NULL_POINTER = 4,
  CC_STATUS_INTERNAL = 5,
} CcStatus;

/**
 * Opaque layer 2/3 cycle representation.
 */
typedef struct CcRepresentation CcRepresentation;

/**
 * Opaque subgraph of `Q_n`.
 */
typedef struct CcSubgraph CcSubgraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread; empty if none. Valid until the next failing call.
 */
const char *cc_last_error(void);

/**
 * Library version as a static string.
 */
const char *cc_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void cc_string_free(char *s);

/**
 * The full hypercube `Q_n`.
 *
 * # Safety
 * `out_graph` must be a valid pointer.
 */
enum CcStatus cc_subgraph_qn(uint32_t n, struct CcSubgraph **out_graph);

/**
 * Parses the `dim=<n>` edge-list format.
 *
 * # Safety
 * `text_in` must be a nul-terminated string; `out_graph` a valid pointer.
 */
enum CcStatus cc_subgraph_parse(const char *text_in, struct CcSubgraph **out_graph);

/**
 * # Safety
 * `g` must come from this library and not have been freed. Null is ignored.
 */
void cc_subgraph_free(struct CcSubgraph *g);

/**
 * Number of edges; 0 for null.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t cc_subgraph_edge_count(const struct CcSubgraph *g);

/**
 * Renders the edge-list format into a new string.
 *
 * # Safety
 * `g` must be a live handle; `out_text` a valid pointer.
 */
enum CcStatus cc_subgraph_to_text(const struct CcSubgraph *g, char **out_text);

/**
 * Number of `two_ell`-cycles in `g`. A zero budget selects the default.
 *
 * # Safety
 * `g` must be a live handle; `out_count` a valid pointer.
 */
enum CcStatus cc_count_cycles(const struct CcSubgraph *g,
                              uint32_t two_ell,
                              uint64_t budget_units,
                              uint64_t *out_count);

/**
 * Sets `*out_free` to 1 when `g` has no `two_ell`-cycle, else 0.
 *
 * # Safety
 * `g` must be a live handle; `out_free` a valid pointer.
 */
enum CcStatus cc_is_cycle_free(const struct CcSubgraph *g,
                               uint32_t two_ell,
                               uint64_t budget_units,
                               int *out_free);

/**
 * Census of `Q_n`: total cycle count and the common per-edge count.
 * Fails with `VerificationFailure` if the per-edge counts are not uniform.
 *
 * # Safety
 * `out_total` and `out_per_edge` must be valid pointers.
 */
enum CcStatus cc_census(uint32_t n,
                        uint32_t two_ell,
                        uint64_t budget_units,
                        uint64_t *out_total,
                        uint64_t *out_per_edge);

/**
 * Builds the representation for odd `ell >= 7` over `[n]` with the default labels.
 *
 * # Safety
 * `out_rep` must be a valid pointer.
 */
enum CcStatus cc_representation_build(uint32_t ell, uint32_t n, struct CcRepresentation **out_rep);

/**
 * Reads a representation from its JSON document.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out_rep` a valid pointer.
 */
enum CcStatus cc_representation_from_json(const char *json, struct CcRepresentation **out_rep);

/**
 * Serialises a representation to its JSON document.
 *
 * # Safety
 * `rep` must be a live handle; `out_json` a valid pointer.
 */
enum CcStatus cc_representation_to_json(const struct CcRepresentation *rep, char **out_json);

/**
 * Checks all six clauses. Returns `VerificationFailure` naming the first failed clause.
 *
 * # Safety
 * `rep` must be a live handle.
 */
enum CcStatus cc_representation_verify(const struct CcRepresentation *rep);

/**
 * The cycle of the representation as a new subgraph handle.
 *
 * # Safety
 * `rep` must be a live handle; `out_graph` a valid pointer.
 */
enum CcStatus cc_representation_subgraph(const struct CcRepresentation *rep,
                                         struct CcSubgraph **out_graph);

/**
 * # Safety
 * `rep` must come from this library and not have been freed. Null is ignored.
 */
void cc_representation_free(struct CcRepresentation *rep);

/**
 * Upper-bound exponent `5/6 + 1/(3(ell-3))` as a reduced fraction.
 *
 * # Safety
 * `num` and `den` must be valid pointers.
 */
enum CcStatus cc_upper_bound_exponent(uint32_t ell, int64_t *num, int64_t *den);

/**
 * Random-colouring lower-bound exponent `1/2 + 1/(4 ell - 2)`.
 *
 * # Safety
 * `num` and `den` must be valid pointers.
 */
enum CcStatus cc_lower_bound_exponent(uint32_t ell, int64_t *num, int64_t *den);

/**
 * One trial of the colouring construction; returns the certified kept subgraph.
 *
 * # Safety
 * `out_graph` must be a valid pointer.
 */
enum CcStatus cc_construct(uint32_t n,
                           uint32_t ell,
                           double c,
                           uint64_t seed,
                           uint64_t trial,
                           uint64_t budget_units,
                           struct CcSubgraph **out_graph);

/**
 * Exact `ex(Q_n, C_two_ell)`.
 *
 * # Safety
 * `out_value` must be a valid pointer.
 */
enum CcStatus cc_ex_cube(uint32_t n, uint32_t two_ell, uint64_t budget_units, uint64_t *out_value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CUBECYCLE_H */
