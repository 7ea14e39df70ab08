#ifndef MAPCENSUS_H
#define MAPCENSUS_H

/* Generated by cbindgen from mapcensus-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Surface selector for [`mc_catalog_build`]: maps on the sphere.
 */
#define MC_SURFACE_SPHERE 0

/**
 * Surface selector for [`mc_catalog_build`]: plane graphs (sphere maps
 * with a distinguished outer face).
 */
#define MC_SURFACE_PLANE 1

/**
 * Mode selector: mirror images are identified.
 */
#define MC_MODE_FULL 0

/**
 * Mode selector: orientation-preserving equivalence only.
 */
#define MC_MODE_ORIENTED 1

/**
 * Outcome of an FFI call.
 */
typedef enum McStatus {
  MC_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  MC_STATUS_NULL_ARGUMENT = 1,
  /**
   * An argument was out of range: zero edges, an unknown surface or
   * mode selector, or an entry index past the end of the catalog.
   */
  MC_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The requested edge count exceeds the labeled-sweep guard.
   */
  MC_STATUS_GUARD_EXCEEDED = 3,
  /**
   * A panic crossed the boundary or an internal cross-check failed.
   */
  MC_STATUS_INTERNAL_ERROR = 4,
} McStatus;

/**
 * Opaque census handle; build with [`mc_catalog_build`], release with
 * [`mc_catalog_free`].
 */
typedef struct McCatalog McCatalog;

/**
 * Source, saddle, and sink counts of the Morse flow read off one plane
 * graph. `euler_check` records `sources - saddles + sinks = 1`.
 */
typedef struct McFlowSummary {
  size_t sources;
  size_t saddles;
  size_t sinks;
  bool euler_check;
} McFlowSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Enumerate the census with `edge_count` edges on the chosen surface
 * (`MC_SURFACE_*`) under the chosen equivalence (`MC_MODE_*`), storing a
 * fresh handle in `*out`.
 *
 * # Safety
 *
 * `out` must be null or valid for writing one pointer.
 */
enum McStatus mc_catalog_build(size_t edge_count, int surface, int mode, struct McCatalog **out);

/**
 * Release a catalog handle. Null is a no-op.
 *
 * # Safety
 *
 * `catalog` must be null or a pointer obtained from [`mc_catalog_build`]
 * that has not already been freed.
 */
void mc_catalog_free(struct McCatalog *catalog);

/**
 * Number of equivalence classes in the catalog.
 *
 * # Safety
 *
 * `catalog` must be a live handle; `out_len` null or writable.
 */
enum McStatus mc_catalog_len(const struct McCatalog *catalog, size_t *out_len);

/**
 * Canonical code of entry `index`, as a NUL-terminated string owned by
 * the caller (release with [`mc_string_free`]). Entries are sorted by
 * code, so `index` enumerates the catalog in its canonical order.
 *
 * # Safety
 *
 * `catalog` must be a live handle; `out_code` null or writable.
 */
enum McStatus mc_catalog_code(const struct McCatalog *catalog, size_t index, char **out_code);

/**
 * The whole catalog rendered as JSON, byte-identical to the CLI output.
 * The returned string is owned by the caller (release with
 * [`mc_string_free`]).
 *
 * # Safety
 *
 * `catalog` must be a live handle; `out_json` null or writable.
 */
enum McStatus mc_catalog_json(const struct McCatalog *catalog, char **out_json);

/**
 * Release a string obtained from this library. Null is a no-op.
 *
 * # Safety
 *
 * `s` must be null or a pointer obtained from [`mc_catalog_code`] or
 * [`mc_catalog_json`] that has not already been freed.
 */
void mc_string_free(char *s);

/**
 * Morse-flow reading of plane entry `index`: sources at vertices,
 * saddles on edges, sinks in the bounded faces. Rejects sphere catalogs
 * with `MC_STATUS_INVALID_ARGUMENT`, since the flow reading needs a
 * distinguished outer face.
 *
 * # Safety
 *
 * `catalog` must be a live handle; `out_summary` null or writable.
 */
enum McStatus mc_flow_summary(const struct McCatalog *catalog,
                              size_t index,
                              struct McFlowSummary *out_summary);

/**
 * Run the published-count verification over `1..=max_edges` edges in
 * both equivalence modes and store whether the adopted mode matched
 * every published value. A `false` result is a completed verification
 * that found mismatches, not an error.
 *
 * # Safety
 *
 * `out_pass` must be null or valid for writing one `bool`.
 */
enum McStatus mc_verify(size_t max_edges, bool *out_pass);

/**
 * Library version as a static NUL-terminated string; do not free.
 */
const char *mc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MAPCENSUS_H */
