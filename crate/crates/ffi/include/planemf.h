#ifndef PLANEMF_H
#define PLANEMF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. Zero is success.
typedef enum PmfStatus {
  PMF_STATUS_OK = 0,
  PMF_STATUS_NULL_ARGUMENT = 1,
  PMF_STATUS_INVALID_UTF8 = 2,
  PMF_STATUS_PARSE = 3,
  PMF_STATUS_INVALID_INSTANCE = 4,
  PMF_STATUS_INVALID_ARGUMENT = 5,
  PMF_STATUS_TOO_LARGE = 6,
  PMF_STATUS_SOLVER = 7,
  PMF_STATUS_PANIC = 8,
} PmfStatus;

// Stage selector for [`pmf_solve`].
typedef enum PmfStage {
  PMF_STAGE_FRACTIONAL = 0,
  PMF_STAGE_HALF_INTEGER = 1,
  PMF_STAGE_INTEGER = 2,
  PMF_STAGE_PLUS_ONE = 3,
} PmfStage;

// Opaque instance handle.
typedef struct PmfInstance PmfInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer is
// valid until the next library call on this thread.
const char *pmf_last_error(void);

// Static version string.
const char *pmf_version(void);

// Releases a string returned by the library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void pmf_string_free(char *s);

// Parses an instance from planemf v1 text.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a writable pointer.
enum PmfStatus pmf_instance_parse(const char *text, struct PmfInstance **out);

// Generates the ladder instance `G_k`; `k` must be at least 3.
//
// # Safety
// `out` must be a writable pointer.
enum PmfStatus pmf_instance_gen_gk(size_t k, struct PmfInstance **out);

// Generates the doubled four-cycle instance with two crossing demands.
//
// # Safety
// `out` must be a writable pointer.
enum PmfStatus pmf_instance_gen_c4(struct PmfInstance **out);

// Releases an instance. Null is ignored.
//
// # Safety
// `inst` must come from this library and not have been freed.
void pmf_instance_free(struct PmfInstance *inst);

// # Safety
// `inst` must be a live handle or null (which yields 0).
size_t pmf_instance_num_vertices(const struct PmfInstance *inst);

// # Safety
// `inst` must be a live handle or null (which yields 0).
size_t pmf_instance_num_edges(const struct PmfInstance *inst);

// # Safety
// `inst` must be a live handle or null (which yields 0).
size_t pmf_instance_num_demands(const struct PmfInstance *inst);

// Writes the instance as planemf v1 text.
//
// # Safety
// `inst` must be a live handle and `out` a writable pointer.
enum PmfStatus pmf_instance_serialize(const struct PmfInstance *inst, char **out);

// Runs one pipeline stage. On success `*out_json` holds the report document
// and, when the optimum fits, `*out_num / *out_den` its value. Either value
// pointer may be null.
//
// # Safety
// `inst` must be a live handle; non-null pointers must be writable.
enum PmfStatus pmf_solve(const struct PmfInstance *inst,
                         enum PmfStage stage,
                         int64_t *out_num,
                         int64_t *out_den,
                         char **out_json);

// Runs the primal-dual multicut. `*out_cost` receives `c(Q)` and
// `*out_json` the report document with `Q` and the certifying flow.
//
// # Safety
// `inst` must be a live handle; `out_json` must be writable; `out_cost`
// may be null.
enum PmfStatus pmf_multicut(const struct PmfInstance *inst, uint64_t *out_cost, char **out_json);

// Full pipeline report as JSON. `*out_ok` (if non-null) is set to 1 when
// every inequality check holds and 0 otherwise.
//
// # Safety
// `inst` must be a live handle; `out_json` must be writable; `out_ok`
// may be null.
enum PmfStatus pmf_report(const struct PmfInstance *inst, int32_t *out_ok, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PLANEMF_H */
