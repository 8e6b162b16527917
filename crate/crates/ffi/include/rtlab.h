#ifndef RTLAB_H
#define RTLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RtlabClass {
  RTLAB_CLASS_DIGRAPH = 0,
  RTLAB_CLASS_ORIENTED = 1,
} RtlabClass;

typedef enum RtlabObjective {
  RTLAB_OBJECTIVE_MAX_TOTAL = 0,
  RTLAB_OBJECTIVE_MAX_MIN = 1,
} RtlabObjective;

typedef enum RtlabPattern {
  RTLAB_PATTERN_DIRECTED = 0,
  RTLAB_PATTERN_TRANSITIVE = 1,
} RtlabPattern;

typedef enum RtlabStatus {
  RTLAB_STATUS_OK = 0,
  RTLAB_STATUS_NULL_POINTER = 1,
  RTLAB_STATUS_INVALID_ARGUMENT = 2,
  RTLAB_STATUS_PARSE = 3,
  RTLAB_STATUS_SIZE_LIMIT = 4,
  RTLAB_STATUS_UTF8 = 5,
  RTLAB_STATUS_PANIC = 6,
} RtlabStatus;

/**
 * Opaque colored digraph.
 */
typedef struct RtlabGraph RtlabGraph;

/**
 * A rainbow triangle: vertices in pattern roles and 1-based colors of the
 * edges `uv`, `vw` and the closing edge.
 */
typedef struct RtlabWitness {
  uint32_t vertices[3];
  uint32_t colors[3];
} RtlabWitness;

/**
 * Outcome of an extremal search.
 */
typedef struct RtlabSearchResult {
  uint64_t optimum;
  uint64_t explored;
  bool exhaustive;
} RtlabSearchResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or null. The pointer
 * stays valid until the next call on the same thread.
 */
const char *rtlab_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void rtlab_string_free(char *s);

/**
 * Creates an edgeless graph on `n` vertices with `c` colors.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum RtlabStatus rtlab_graph_new(uint32_t n, uint32_t c, struct RtlabGraph **out);

/**
 * Parses a graph document `{"n":..,"c":..,"edges":[[color,from,to],..]}`.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum RtlabStatus rtlab_graph_from_json(const char *json, struct RtlabGraph **out);

/**
 * Builds a named construction. `c = 0` selects the construction's fixed
 * color count.
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` a valid pointer.
 */
enum RtlabStatus rtlab_construct(const char *name, uint32_t n, uint32_t c, struct RtlabGraph **out);

/**
 * Releases a graph handle. Null is ignored.
 *
 * # Safety
 * `g` must come from this library and not have been freed.
 */
void rtlab_graph_free(struct RtlabGraph *g);

/**
 * Adds the edge `from -> to` in `color` (1-based).
 *
 * # Safety
 * `g` must be a valid handle.
 */
enum RtlabStatus rtlab_graph_add_edge(struct RtlabGraph *g,
                                      uint32_t color,
                                      uint32_t from,
                                      uint32_t to);

/**
 * # Safety
 * `g` must be a valid handle; `n` and `c` valid pointers.
 */
enum RtlabStatus rtlab_graph_dims(const struct RtlabGraph *g, uint32_t *n, uint32_t *c);

/**
 * Number of edges of color `color` (1-based).
 *
 * # Safety
 * `g` must be a valid handle and `out` a valid pointer.
 */
enum RtlabStatus rtlab_graph_count_color(const struct RtlabGraph *g, uint32_t color, uint64_t *out);

/**
 * # Safety
 * `g` must be a valid handle and `out` a valid pointer.
 */
enum RtlabStatus rtlab_graph_total_edges(const struct RtlabGraph *g, uint64_t *out);

/**
 * # Safety
 * `g` must be a valid handle and `out` a valid pointer.
 */
enum RtlabStatus rtlab_graph_is_oriented(const struct RtlabGraph *g, bool *out);

/**
 * Serializes the graph; free the result with [`rtlab_string_free`].
 *
 * # Safety
 * `g` must be a valid handle and `out` a valid pointer.
 */
enum RtlabStatus rtlab_graph_to_json(const struct RtlabGraph *g, char **out);

/**
 * Looks for a rainbow triangle. `found` is set in every successful call;
 * `witness` may be null and is written only when one is found.
 *
 * # Safety
 * `g` must be a valid handle, `found` a valid pointer, `witness` null or
 * valid.
 */
enum RtlabStatus rtlab_find_rainbow(const struct RtlabGraph *g,
                                    enum RtlabPattern pattern,
                                    bool *found,
                                    struct RtlabWitness *witness);

/**
 * Number of rainbow triangles of the pattern.
 *
 * # Safety
 * `g` must be a valid handle and `out` a valid pointer.
 */
enum RtlabStatus rtlab_count_rainbow(const struct RtlabGraph *g,
                                     enum RtlabPattern pattern,
                                     uint64_t *out);

/**
 * Exact extremal search. `max_nodes = 0` means no node limit. `witness`
 * may be null; otherwise it receives a new handle for the best graph.
 *
 * # Safety
 * `out` must be a valid pointer, `witness` null or valid.
 */
enum RtlabStatus rtlab_search(uint32_t n,
                              uint32_t c,
                              enum RtlabPattern pattern,
                              enum RtlabClass class_,
                              enum RtlabObjective objective,
                              uint64_t max_nodes,
                              struct RtlabSearchResult *out,
                              struct RtlabGraph **witness);

/**
 * Runs a scenario catalogue (JSON array). `report` receives the per-entry
 * results as JSON; free it with [`rtlab_string_free`].
 *
 * # Safety
 * `json` must be a nul-terminated string; `pass` and `report` valid
 * pointers.
 */
enum RtlabStatus rtlab_catalogue_run(const char *json, bool *pass, char **report);

/**
 * Maximum edge count on `A ⊎ B` with no triangle meeting both sides.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum RtlabStatus rtlab_lemma21(uint32_t a, uint32_t b, uint64_t *out);

/**
 * Decimal value of a named threshold constant.
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` a valid pointer.
 */
enum RtlabStatus rtlab_threshold(const char *name, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RTLAB_H */
