#ifndef REVDIST_H
#define REVDIST_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Export format selector for [`rd_fatgraph_export`].
typedef enum RdFormat {
  RD_FORMAT_JSON = 0,
  RD_FORMAT_DOT = 1,
} RdFormat;

// Result code of every call.
typedef enum RdStatus {
  RD_STATUS_OK = 0,
  RD_STATUS_NULL_POINTER = 1,
  RD_STATUS_INVALID_UTF8 = 2,
  RD_STATUS_PARSE = 3,
  RD_STATUS_CAP_EXCEEDED = 4,
  RD_STATUS_DISAGREEMENT = 5,
  RD_STATUS_INVALID_ARGUMENT = 6,
  RD_STATUS_INTERNAL = 7,
} RdStatus;

// Opaque fatgraph.
typedef struct RdFatgraph RdFatgraph;

// Opaque signed permutation.
typedef struct RdSignedPerm RdSignedPerm;

// All cycle counts and bounds of one permutation.
typedef struct RdBoundReport {
  size_t n;
  size_t c_plane;
  size_t c_theta;
  size_t c_bg;
  size_t bound;
  size_t bound_plane;
  size_t bound_bg;
  size_t bound_genus;
} RdBoundReport;

// Cell counts and genus of a fatgraph.
typedef struct RdFatgraphStats {
  size_t vertices;
  size_t edges;
  size_t faces;
  size_t genus;
} RdFatgraphStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL.
// The pointer stays valid until the next failing call on the same thread.
const char *rd_last_error_message(void);

// Parses a whitespace- or comma-separated permutation such as "-5 1 -3 2 4".
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum RdStatus rd_perm_parse(const char *text, struct RdSignedPerm **out);

// Builds a permutation from `len` signed entries.
//
// # Safety
// `entries` must point to `len` readable values; `out` must be writable.
enum RdStatus rd_perm_from_array(const int32_t *entries, size_t len, struct RdSignedPerm **out);

// Frees a permutation handle. NULL is ignored.
//
// # Safety
// `perm` must come from this library and not be freed twice.
void rd_perm_free(struct RdSignedPerm *perm);

// Length n of the permutation, 0 for NULL.
//
// # Safety
// `perm` must be NULL or a live handle.
size_t rd_perm_len(const struct RdSignedPerm *perm);

// # Safety
// `perm` must be a live handle; `out` must be writable.
enum RdStatus rd_bound_plane(const struct RdSignedPerm *perm, size_t *out);

// # Safety
// `perm` must be a live handle; `out` must be writable.
enum RdStatus rd_bound_bg(const struct RdSignedPerm *perm, size_t *out);

// # Safety
// `perm` must be a live handle; `out` must be writable.
enum RdStatus rd_bound_genus(const struct RdSignedPerm *perm, size_t *out);

// Computes all three bounds; `RD_STATUS_DISAGREEMENT` if they differ.
//
// # Safety
// `perm` must be a live handle; `out` must be writable.
enum RdStatus rd_check_equivalence(const struct RdSignedPerm *perm, struct RdBoundReport *out);

// Whether `n` and the last entry `s_n` lie in one cycle of `p ∘ s̃`.
//
// # Safety
// `perm` must be a live handle; `out` must be writable.
enum RdStatus rd_check_conjecture(const struct RdSignedPerm *perm, bool *out);

// Exact reversal distance by BFS. `max_n` 0 means the environment or default cap.
//
// # Safety
// `perm` must be a live handle; `out` must be writable.
enum RdStatus rd_exact_distance(const struct RdSignedPerm *perm, size_t max_n, size_t *out);

// Number of reversals in the greedy sorting certificate.
//
// # Safety
// `perm` must be a live handle; `out` must be writable.
enum RdStatus rd_greedy_sort_length(const struct RdSignedPerm *perm, size_t *out);

// Builds the fatgraph of a permutation.
//
// # Safety
// `perm` must be a live handle; `out` must be writable.
enum RdStatus rd_fatgraph_new(const struct RdSignedPerm *perm, struct RdFatgraph **out);

// Frees a fatgraph handle. NULL is ignored.
//
// # Safety
// `fg` must come from this library and not be freed twice.
void rd_fatgraph_free(struct RdFatgraph *fg);

// # Safety
// `fg` must be a live handle; `out` must be writable.
enum RdStatus rd_fatgraph_stats(const struct RdFatgraph *fg, struct RdFatgraphStats *out);

// Renders the fatgraph; release the string with [`rd_string_free`].
//
// # Safety
// `fg` must be a live handle; `out` must be writable.
enum RdStatus rd_fatgraph_export(const struct RdFatgraph *fg, enum RdFormat format, char **out);

// Frees a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void rd_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REVDIST_H */
