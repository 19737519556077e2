#ifndef SPLITSEC_H
#define SPLITSEC_H

/* Generated by cbindgen from the splitsec-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * How a verdict was obtained.
 */
typedef enum SplitsecProvenance {
  SPLITSEC_PROVENANCE_CLOSED_FORM = 0,
  SPLITSEC_PROVENANCE_RANK = 1,
  SPLITSEC_PROVENANCE_KNOWN_RESULT = 2,
} SplitsecProvenance;

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum SplitsecStatus {
  SPLITSEC_STATUS_OK = 0,
  /**
   * invalid argument (null pointer, bad parameter range, composite prime)
   */
  SPLITSEC_STATUS_ARGUMENT = 1,
  /**
   * descriptor or function-spec text failed to parse
   */
  SPLITSEC_STATUS_PARSE = 2,
  /**
   * work refused: the matrix would exceed the configured cell budget
   */
  SPLITSEC_STATUS_CAPACITY = 3,
  /**
   * result does not fit the output representation
   */
  SPLITSEC_STATUS_OVERFLOW = 4,
  SPLITSEC_STATUS_INTERNAL = 5,
} SplitsecStatus;

/**
 * Verdict for a secant-variety dimension query.
 */
typedef enum SplitsecVerdict {
  SPLITSEC_VERDICT_NONDEFECTIVE = 0,
  SPLITSEC_VERDICT_DEFECTIVE_CLOSED_FORM = 1,
  SPLITSEC_VERDICT_INCONCLUSIVE = 2,
} SplitsecVerdict;

/**
 * Opaque evaluation configuration. Create with [`splitsec_config_new`],
 * release with [`splitsec_config_free`].
 */
typedef struct SplitsecConfig SplitsecConfig;

/**
 * Report for one secant-variety query. Dimensions are projective;
 * `achieved_dim` is exact for closed-form verdicts and a lower bound for
 * inconclusive ones.
 */
typedef struct SplitsecSecantReport {
  uint64_t expected_dim;
  uint64_t achieved_dim;
  uint64_t defect;
  enum SplitsecVerdict verdict;
  enum SplitsecProvenance provenance;
  uint64_t seed;
  uint32_t prime;
} SplitsecSecantReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *splitsec_last_error(void);

/**
 * Library version as a static string; do not free.
 */
const char *splitsec_version(void);

/**
 * New configuration with the defaults (p = 32003, seed 1, 3 attempts).
 */
struct SplitsecConfig *splitsec_config_new(void);

/**
 * # Safety
 * `cfg` must be a pointer from [`splitsec_config_new`], not yet freed.
 */
void splitsec_config_free(struct SplitsecConfig *cfg);

/**
 * # Safety
 * `cfg` must be a valid configuration handle.
 */
enum SplitsecStatus splitsec_config_set_prime(struct SplitsecConfig *cfg, uint32_t prime);

/**
 * # Safety
 * `cfg` must be a valid configuration handle.
 */
void splitsec_config_set_seed(struct SplitsecConfig *cfg, uint64_t seed);

/**
 * # Safety
 * `cfg` must be a valid configuration handle.
 */
enum SplitsecStatus splitsec_config_set_max_attempts(struct SplitsecConfig *cfg, uint32_t attempts);

/**
 * # Safety
 * `cfg` must be a valid configuration handle.
 */
void splitsec_config_set_cell_budget(struct SplitsecConfig *cfg, uint64_t cells);

/**
 * Dimension and defect of the s-th secant variety of the degree-d split
 * variety in projective n-space.
 *
 * # Safety
 * `cfg` must be a valid configuration handle (or null for defaults) and
 * `out` must point to writable memory for one report.
 */
enum SplitsecStatus splitsec_secant_dim(const struct SplitsecConfig *cfg,
                                        uint32_t n,
                                        uint32_t d,
                                        uint64_t s,
                                        struct SplitsecSecantReport *out);

/**
 * Evaluate a statement descriptor (same text syntax as the CLI) and return
 * the outcome as a JSON string. The caller owns the string and must free it
 * with [`splitsec_string_free`]. Verified statements set `*out_verified`.
 *
 * # Safety
 * `descriptor` must be a NUL-terminated string; `out_json` and
 * `out_verified` must be writable (either may be null to skip it).
 */
enum SplitsecStatus splitsec_statement_eval(const struct SplitsecConfig *cfg,
                                            const char *descriptor,
                                            char **out_json,
                                            bool *out_verified);

/**
 * Largest certified summand count for d >= n >= 4 via the splitting-graph
 * bound.
 *
 * # Safety
 * `out_c` and `out_bound` must be writable (either may be null).
 */
enum SplitsecStatus splitsec_exp_bound(uint32_t n,
                                       uint32_t d,
                                       uint64_t *out_c,
                                       uint64_t *out_bound);

/**
 * Splitting graph of the pure statement with s summands, in DOT format.
 * The caller owns the returned string.
 *
 * # Safety
 * `out_dot` must be writable.
 */
enum SplitsecStatus splitsec_split_graph_dot(uint32_t n, uint32_t d, uint64_t s, char **out_dot);

/**
 * Verify a pure statement through its splitting graph (envelope route).
 * Sets `*out_verified` when every sink passes.
 *
 * # Safety
 * `cfg` may be null (defaults); `out_verified` must be writable.
 */
enum SplitsecStatus splitsec_verify_by_splitting(const struct SplitsecConfig *cfg,
                                                 uint32_t n,
                                                 uint32_t d,
                                                 uint64_t s,
                                                 bool *out_verified);

/**
 * Free a string returned by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned by a `splitsec_*` call that
 * transfers ownership, and not yet freed.
 */
void splitsec_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SPLITSEC_H */
