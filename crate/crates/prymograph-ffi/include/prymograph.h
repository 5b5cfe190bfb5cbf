#ifndef PRYMOGRAPH_H
#define PRYMOGRAPH_H

/* Generated by cbindgen from the prymograph-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>
#include <stdint.h>

// Result of every fallible call.
typedef enum PgStatus {
  PG_STATUS_OK = 0,
  PG_STATUS_INVALID_GRAPH = 1,
  PG_STATUS_NOT_STABLE = 2,
  PG_STATUS_NOT_EULERIAN = 3,
  PG_STATUS_CAP_EXCEEDED = 4,
  PG_STATUS_BAD_T = 5,
  PG_STATUS_TOO_MANY_COMPONENTS = 6,
  PG_STATUS_HYPOTHESIS_NOT_MET = 7,
  PG_STATUS_SPACE_TOO_LARGE = 8,
  PG_STATUS_DISCONNECTED = 9,
  PG_STATUS_SPLIT_INVALID = 10,
  PG_STATUS_OVERFLOW = 11,
  PG_STATUS_PARSE = 12,
  PG_STATUS_IO = 13,
  PG_STATUS_NULL_ARGUMENT = 14,
  PG_STATUS_UTF8 = 15,
  PG_STATUS_PANIC = 16,
} PgStatus;

// A parsed graph. Opaque: create with `pg_graph_parse`, release with
// `pg_graph_free`.
typedef struct PgGraph PgGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Last failure message on this thread. Valid until the next failing call
// on the same thread; never NULL.
const char *pg_last_error_message(void);

// Parse a graph from JSON. On success writes a fresh handle to `out`.
//
// # Safety
// `json` must be a valid NUL-terminated string; `out` must be a valid
// pointer.
enum PgStatus pg_graph_parse(const char *json, struct PgGraph **out);

// Release a graph handle. NULL is a no-op.
//
// # Safety
// `g` must be NULL or a handle from `pg_graph_parse` not yet freed.
void pg_graph_free(struct PgGraph *g);

// Release a string produced by this library. NULL is a no-op.
//
// # Safety
// `s` must be NULL or a string written by this library not yet freed.
void pg_string_free(char *s);

// Component structure of the square-root locus, as JSON.
//
// # Safety
// `g` must be a live handle; `out` must be a valid pointer.
enum PgStatus pg_fiber_report(const struct PgGraph *g, uint32_t cap, char **out);

// Parity-refined multiplicity set, as JSON.
//
// # Safety
// `g` must be a live handle; `out` must be a valid pointer.
enum PgStatus pg_spin_set(const struct PgGraph *g, uint32_t cap, char **out);

// Multidegrees and subcurve inequality certificates, as JSON. `sigma_csv`
// is a comma-separated list of edge ids to blow up (NULL or "" for none).
//
// # Safety
// `g` must be a live handle; `sigma_csv` NULL or a valid string; `out` a
// valid pointer.
enum PgStatus pg_degrees(const struct PgGraph *g, const char *sigma_csv, int64_t t, char **out);

// Build the double cover over the blown set, as JSON. `monodromy_json` may
// be NULL when exactly one valid choice exists.
//
// # Safety
// `g` must be a live handle; string arguments NULL or valid strings; `out`
// a valid pointer.
enum PgStatus pg_cover(const struct PgGraph *g,
                       const char *sigma_csv,
                       const char *monodromy_json,
                       char **out);

// DOT rendering of the graph with the listed edges dashed.
//
// # Safety
// `g` must be a live handle; `sigma_csv` NULL or a valid string; `out` a
// valid pointer.
enum PgStatus pg_export_dot(const struct PgGraph *g, const char *sigma_csv, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PRYMOGRAPH_H */
