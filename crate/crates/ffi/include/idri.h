#ifndef IDRI_H
#define IDRI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define IDRI_MODE_DATASET 0

#define IDRI_MODE_DECLARED 1

#define IDRI_INCLUDE_S_GE_1 0

#define IDRI_INCLUDE_S_GE_2 1

#define IDRI_METRIC_OK 0

#define IDRI_METRIC_INSUFFICIENT_CITATIONS 1

#define IDRI_METRIC_EMPTY_DENOMINATOR 2

#define IDRI_AGGREGATE_OK 0

#define IDRI_AGGREGATE_INSUFFICIENT_GROUP 1

typedef enum IdriStatus {
  IDRI_STATUS_OK = 0,
  IDRI_STATUS_NULL_POINTER = 1,
  IDRI_STATUS_INVALID_UTF8 = 2,
  IDRI_STATUS_IO = 3,
  IDRI_STATUS_PARSE = 4,
  IDRI_STATUS_EMPTY_GRAPH = 5,
  IDRI_STATUS_UNKNOWN_PAPER = 6,
  IDRI_STATUS_MISSING_DECLARED_COUNT = 7,
  IDRI_STATUS_INVALID_ARGUMENT = 8,
  IDRI_STATUS_CAP_EXCEEDED = 9,
  IDRI_STATUS_NO_AGGREGABLE_MEMBERS = 10,
  IDRI_STATUS_OVERFLOW = 11,
  IDRI_STATUS_PANIC = 99,
} IdriStatus;

/**
 * Opaque graph handle.
 */
typedef struct IdriGraph IdriGraph;

typedef struct IdriFocalStats {
  uint64_t s;
  uint64_t d;
  uint64_t k;
  uint64_t q;
} IdriFocalStats;

typedef struct IdriFraction {
  int64_t num;
  int64_t den;
} IdriFraction;

/**
 * Per-paper metrics. Fractions whose `has_*` flag is false are zeroed.
 */
typedef struct IdriMetric {
  struct IdriFocalStats stats;
  /**
   * One of the `IDRI_METRIC_*` constants.
   */
  int32_t status;
  bool has_xm;
  struct IdriFraction xm;
  bool has_index;
  struct IdriFraction xm_norm;
  struct IdriFraction idri;
  /**
   * `idri` as a double, NaN when absent.
   */
  double idri_value;
} IdriMetric;

typedef struct IdriAggregate {
  uint64_t n;
  uint64_t sum_s;
  uint64_t sum_d;
  uint64_t sum_q;
  uint64_t sum_k;
  /**
   * One of the `IDRI_AGGREGATE_*` constants.
   */
  int32_t status;
  bool has_xm_joint;
  struct IdriFraction xm_joint;
  bool has_index;
  struct IdriFraction xm_norm_joint;
  struct IdriFraction idri_joint;
  double idri_value;
} IdriAggregate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next `idri_*` call on the same thread.
 */
const char *idri_last_error_message(void);

/**
 * Loads an edge CSV (`citing_id,cited_id`).
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a writable pointer.
 */
enum IdriStatus idri_graph_from_csv_path(const char *path, struct IdriGraph **out);

/**
 * Builds a graph from parallel arrays of `len` citing and cited ids.
 *
 * # Safety
 * `citing` and `cited` must each point to `len` NUL-terminated strings.
 */
enum IdriStatus idri_graph_from_edges(const char *const *citing,
                                      const char *const *cited,
                                      size_t len,
                                      struct IdriGraph **out);

/**
 * Generates a preferential-attachment citation network.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum IdriStatus idri_graph_synth(size_t num_papers,
                                 size_t refs_per_paper,
                                 double uniform_mix,
                                 uint64_t seed,
                                 struct IdriGraph **out);

/**
 * Applies a metadata CSV (`paper_id,group,ref_count`); declared reference
 * counts become available to `IDRI_MODE_DECLARED`.
 *
 * # Safety
 * `graph` must be a live handle and `path` a NUL-terminated string.
 */
enum IdriStatus idri_graph_load_metadata(struct IdriGraph *graph, const char *path);

/**
 * # Safety
 * `graph` must be NULL or a handle not yet freed.
 */
void idri_graph_free(struct IdriGraph *graph);

/**
 * # Safety
 * `graph` must be NULL or a live handle.
 */
size_t idri_graph_paper_count(const struct IdriGraph *graph);

/**
 * # Safety
 * `graph` must be NULL or a live handle.
 */
size_t idri_graph_edge_count(const struct IdriGraph *graph);

/**
 * # Safety
 * `graph` must be a live handle, `id` a NUL-terminated string and `out`
 * writable.
 */
enum IdriStatus idri_focal_stats(const struct IdriGraph *graph,
                                 const char *id,
                                 uint32_t ref_mode,
                                 struct IdriFocalStats *out);

/**
 * # Safety
 * Same as [`idri_focal_stats`].
 */
enum IdriStatus idri_metric(const struct IdriGraph *graph,
                            const char *id,
                            uint32_t ref_mode,
                            struct IdriMetric *out);

/**
 * Pools the papers named in `ids` into one group.
 *
 * # Safety
 * `ids` must point to `len` NUL-terminated strings; `graph` must be live and
 * `out` writable.
 */
enum IdriStatus idri_aggregate(const struct IdriGraph *graph,
                               const char *const *ids,
                               size_t len,
                               uint32_t ref_mode,
                               uint32_t include_rule,
                               struct IdriAggregate *out);

/**
 * Brute-force X-motif count for `id`; refuses graphs above `cap` papers.
 *
 * # Safety
 * Same as [`idri_focal_stats`].
 */
enum IdriStatus idri_oracle_q(const struct IdriGraph *graph,
                              const char *id,
                              size_t cap,
                              uint64_t *out);

/**
 * Mediant (a + c) / (b + d), reduced.
 *
 * # Safety
 * `out` must be writable.
 */
enum IdriStatus idri_mediant(uint64_t a,
                             uint64_t b,
                             uint64_t c,
                             uint64_t d,
                             struct IdriFraction *out);

/**
 * Per-paper report in the CLI's CSV layout, as a newly allocated string to
 * be released with [`idri_string_free`].
 *
 * # Safety
 * `graph` must be live and `out` writable.
 */
enum IdriStatus idri_compute_csv(const struct IdriGraph *graph,
                                 uint32_t ref_mode,
                                 size_t places,
                                 bool include_uncited,
                                 char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void idri_string_free(char *s);

/**
 * Library version as a static NUL-terminated string.
 */
const char *idri_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IDRI_H */
