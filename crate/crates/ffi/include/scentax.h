#ifndef SCENTAX_H
#define SCENTAX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of a fallible call.
 */
typedef enum ScxStatus {
  SCX_STATUS_OK = 0,
  SCX_STATUS_NULL_POINTER = 1,
  SCX_STATUS_INVALID_UTF8 = 2,
  SCX_STATUS_PARSE_ERROR = 3,
  SCX_STATUS_OUT_OF_RANGE = 4,
  SCX_STATUS_NOT_FOUND = 5,
  SCX_STATUS_NO_PATH = 6,
  SCX_STATUS_INTERNAL = 7,
} ScxStatus;

typedef enum ScxStyle {
  SCX_STYLE_BRACKETED = 0,
  SCX_STYLE_FLAT = 1,
  SCX_STYLE_TOPOLOGY_SHORT = 2,
} ScxStyle;

typedef enum ScxTier {
  SCX_TIER_NOVICE = 0,
  SCX_TIER_DEVELOPING = 1,
  SCX_TIER_EXPERT_ADAPTIVE = 2,
} ScxTier;

/**
 * Opaque scenario handle.
 */
typedef struct ScxScenario ScxScenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *scx_version(void);

/**
 * Message of the last failure on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *scx_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a pointer obtained from this library that has not
 * been freed yet.
 */
void scx_string_free(char *s);

/**
 * Parses notation into a new handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must point to writable
 * storage for one handle.
 */
enum ScxStatus scx_scenario_parse(const char *text, struct ScxScenario **out);

/**
 * Copies the scenario at `index` (0..215, enumeration order) into a new handle.
 *
 * # Safety
 * `out` must point to writable storage for one handle.
 */
enum ScxStatus scx_space_get(size_t index, struct ScxScenario **out);

/**
 * Number of scenarios in the space.
 */
size_t scx_space_len(void);

/**
 * Looks up a catalog row by label (`"S1"`..`"S24"`, `"T1"`..`"T5"`).
 *
 * # Safety
 * `label` must be a NUL-terminated string; `out` must point to writable
 * storage for one handle.
 */
enum ScxStatus scx_catalog_get(const char *label, struct ScxScenario **out);

/**
 * Frees a handle.
 *
 * # Safety
 * `s` must be NULL or a handle from this library that has not been freed.
 */
void scx_scenario_free(struct ScxScenario *s);

/**
 * Renders a scenario; NULL on a NULL handle.
 *
 * # Safety
 * `s` must be NULL or a live handle.
 */
char *scx_scenario_format(const struct ScxScenario *s, enum ScxStyle style, bool unicode);

/**
 * Topology id 1..8, or 0 for a NULL handle.
 *
 * # Safety
 * `s` must be NULL or a live handle.
 */
uint8_t scx_scenario_topology(const struct ScxScenario *s);

/**
 * Atomic attributes as a bit mask. Bit `i` is set when attribute `i` of
 * entry:P, entry:S, mon, ctl, exit:P, exit:S, sc:OE, sc:OI, sc:FI holds.
 *
 * # Safety
 * `s` must be NULL or a live handle; NULL yields 0.
 */
uint16_t scx_scenario_attributes(const struct ScxScenario *s);

/**
 * Whether two handles hold the same configuration.
 *
 * # Safety
 * Both arguments must be NULL or live handles.
 */
bool scx_scenario_equal(const struct ScxScenario *a, const struct ScxScenario *b);

/**
 * Hamming distance over the nine atomic attributes.
 *
 * # Safety
 * Both arguments must be live handles; a NULL yields `UINT32_MAX`.
 */
uint32_t scx_scenario_distance(const struct ScxScenario *a, const struct ScxScenario *b);

/**
 * Tier of the nearest priority-catalog rows. `exact` receives whether the
 * configuration is itself in the catalog; either out pointer may be NULL.
 *
 * # Safety
 * `s` must be a live handle; non-NULL out pointers must be writable.
 */
enum ScxStatus scx_classify(const struct ScxScenario *s, enum ScxTier *tier, bool *exact);

/**
 * Number of hops of a shortest path between two scenarios through the
 * whole space, each hop changing at most `radius` attributes.
 *
 * # Safety
 * `a` and `b` must be live handles; `hops` must be writable.
 */
enum ScxStatus scx_shortest_hops(const struct ScxScenario *a,
                                 const struct ScxScenario *b,
                                 uint32_t radius,
                                 size_t *hops);

/**
 * Stage reports of the shipped pipeline over the full space, as JSON.
 */
char *scx_pipeline_json(void);

/**
 * Concept lattice of a built-in catalog (`"appendix2"` or `"table1"`)
 * under the default attribute schema, as Graphviz DOT.
 *
 * # Safety
 * `catalog` must be a NUL-terminated string.
 */
char *scx_lattice_dot(const char *catalog);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCENTAX_H */
