#ifndef PSI_SCORE_H
#define PSI_SCORE_H

/* Generated by cbindgen. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible function.
 */
typedef enum {
  PSI_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  PSI_STATUS_NULL_POINTER = 1,
  /**
   * A numeric argument, array length or string was rejected.
   */
  PSI_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Malformed edge list input.
   */
  PSI_STATUS_PARSE = 3,
  /**
   * A file could not be opened or read.
   */
  PSI_STATUS_IO = 4,
  /**
   * The exact solver was asked for a graph above its size cap.
   */
  PSI_STATUS_DENSE_CAP_EXCEEDED = 5,
  /**
   * The dense linear system could not be factorized.
   */
  PSI_STATUS_SINGULAR = 6,
  /**
   * An internal panic was caught.
   */
  PSI_STATUS_PANIC = 7,
} PsiStatus;

/**
 * Solver selected by [`psi_compute`].
 */
typedef enum {
  PSI_METHOD_POWER_PSI = 0,
  PSI_METHOD_POWER_NF = 1,
  PSI_METHOD_EXACT = 2,
} PsiMethod;

/**
 * Opaque per-node posting and re-posting rates.
 */
typedef struct PsiActivity PsiActivity;

/**
 * Opaque follower graph.
 */
typedef struct PsiGraph PsiGraph;

/**
 * Opaque solver output.
 */
typedef struct PsiResult PsiResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on the calling thread, or null if
 * the last call succeeded. The pointer stays valid until the next call
 * into this library from the same thread.
 */
const char *psi_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *psi_version(void);

/**
 * Parses an edge list held in memory (one `follower leader` pair per line).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
PsiStatus psi_graph_from_edge_list(const char *text, PsiGraph **out);

/**
 * Reads an edge list from a file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
PsiStatus psi_graph_from_file(const char *path, PsiGraph **out);

/**
 * Builds a graph on nodes `0..num_nodes` from parallel arrays of
 * `(follower, leader)` indices. Self-loops and duplicates are dropped.
 *
 * # Safety
 * `followers` and `leaders` must each point to `num_edges` elements.
 */
PsiStatus psi_graph_from_edges(size_t num_nodes,
                               const size_t *followers,
                               const size_t *leaders,
                               size_t num_edges,
                               PsiGraph **out);

/**
 * Number of nodes, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t psi_graph_num_nodes(const PsiGraph *graph);

/**
 * Number of distinct edges, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t psi_graph_num_edges(const PsiGraph *graph);

/**
 * Copies the node labels (in index order) into `out`, which must hold at
 * least `psi_graph_num_nodes` elements.
 *
 * # Safety
 * `graph` must be a live handle and `out` must point to `len` writable elements.
 */
PsiStatus psi_graph_labels(const PsiGraph *graph, uint64_t *out, size_t len);

/**
 * # Safety
 * `graph` must be null or a handle not yet freed.
 */
void psi_graph_free(PsiGraph *graph);

/**
 * Same rates for every node.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
PsiStatus psi_activity_homogeneous(size_t num_nodes, double lambda, double mu, PsiActivity **out);

/**
 * Rates drawn uniformly from (0, 1) with a seeded generator.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
PsiStatus psi_activity_random(size_t num_nodes, uint64_t seed, PsiActivity **out);

/**
 * Rates copied from two arrays of length `num_nodes`, indexed like the graph.
 *
 * # Safety
 * `lambda` and `mu` must each point to `num_nodes` elements.
 */
PsiStatus psi_activity_from_arrays(const double *lambda,
                                   const double *mu,
                                   size_t num_nodes,
                                   PsiActivity **out);

/**
 * # Safety
 * `activity` must be null or a handle not yet freed.
 */
void psi_activity_free(PsiActivity *activity);

/**
 * Computes the psi-score of every node. `tolerance` and `max_iterations`
 * are ignored by the exact solver, which is limited to small graphs.
 *
 * # Safety
 * `graph` and `activity` must be live handles and `out` a valid pointer.
 */
PsiStatus psi_compute(const PsiGraph *graph,
                      const PsiActivity *activity,
                      PsiMethod method,
                      double tolerance,
                      size_t max_iterations,
                      PsiResult **out);

/**
 * PageRank with damping `alpha` in (0, 1).
 *
 * # Safety
 * `graph` must be a live handle and `out` a valid pointer.
 */
PsiStatus psi_pagerank(const PsiGraph *graph,
                       double alpha,
                       double tolerance,
                       size_t max_iterations,
                       PsiResult **out);

/**
 * Number of scores, or 0 for a null handle.
 *
 * # Safety
 * `result` must be null or a live handle.
 */
size_t psi_result_len(const PsiResult *result);

/**
 * Copies the scores (in node index order) into `out`.
 *
 * # Safety
 * `result` must be a live handle and `out` must point to `len` writable elements.
 */
PsiStatus psi_result_scores(const PsiResult *result, double *out, size_t len);

/**
 * Iterations performed (0 for the exact solver or a null handle).
 *
 * # Safety
 * `result` must be null or a live handle.
 */
size_t psi_result_iterations(const PsiResult *result);

/**
 * Sparse matrix-vector products performed.
 *
 * # Safety
 * `result` must be null or a live handle.
 */
uint64_t psi_result_matvecs(const PsiResult *result);

/**
 * Whether the stopping rule was met before the iteration cap.
 *
 * # Safety
 * `result` must be null or a live handle.
 */
bool psi_result_converged(const PsiResult *result);

/**
 * # Safety
 * `result` must be null or a handle not yet freed.
 */
void psi_result_free(PsiResult *result);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PSI_SCORE_H */
