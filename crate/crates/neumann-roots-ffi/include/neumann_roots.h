#ifndef NEUMANN_ROOTS_H
#define NEUMANN_ROOTS_H

/* Generated by cbindgen from neumann-roots-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status code of every fallible call.
typedef enum {
  NR_OK = 0,
  NR_NULL_POINTER = 1,
  NR_INVALID_UTF8 = 2,
  NR_MALFORMED_NAME = 3,
  NR_MALFORMED_NUMBER = 4,
  NR_PLACEMENT_MISMATCH = 5,
  NR_UNSUPPORTED_SIZE = 6,
  NR_INFEASIBLE_CASE = 7,
  NR_INTERNAL = 8,
} NrStatus;

// Decision outcome.
typedef enum {
  NR_FEASIBLE = 0,
  NR_INFEASIBLE = 1,
  NR_INDETERMINATE = 2,
} NrVerdict;

// Opaque handle to one symbolic decision.
typedef struct NrCheck NrCheck;

// Run options; get a default-initialized value from `nr_options_default`.
typedef struct {
  // Polya multiplier cap for symbolic sign decisions.
  uint32_t polya_max;
  // 0 = first mixed row, nonzero = minimize the P*Q split.
  uint32_t pivot_minpq;
  // Sampling seed for witness and cross-validation runs.
  uint64_t seed;
  // Sample count for cross-validation runs.
  uint32_t samples;
  // Accept n beyond the built-in cap (column growth is multiplicative).
  uint32_t allow_large;
} NrOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Returns the option block every call treats as the default.
NrOptions nr_options_default(void);

// Library version string; static storage, do not free.
const char *nr_version(void);

// Decides a case symbolically. On NR_OK the caller owns the handle.
// # Safety
// `case_name` must be a valid NUL-terminated string and `out` a valid
// pointer; `options` may be null for defaults.
NrStatus nr_check_new(const char *case_name, const NrOptions *options, NrCheck **out);

// Reads the verdict out of a check handle.
// # Safety
// `check` must come from `nr_check_new` and `out` must be valid.
NrStatus nr_check_verdict(const NrCheck *check, NrVerdict *out);

// Elimination level at which a refutation happened, or -1.
// # Safety
// `check` must come from `nr_check_new` and `out` must be valid.
NrStatus nr_check_fail_level(const NrCheck *check, int32_t *out);

// Full trace as JSON; free with nr_string_free.
// # Safety
// `check` must come from `nr_check_new` and `out` must be valid.
NrStatus nr_check_trace_json(const NrCheck *check, char **out);

// Full trace as human-readable text; free with nr_string_free.
// # Safety
// `check` must come from `nr_check_new` and `out` must be valid.
NrStatus nr_check_trace_text(const NrCheck *check, char **out);

// Releases a check handle. Null is tolerated.
// # Safety
// `check` must come from `nr_check_new` and not be freed twice.
void nr_check_free(NrCheck *check);

// Verdict table for every subset and placement of the given n, as CSV with
// columns case,verdict,fail_level,pf. Free with nr_string_free.
// # Safety
// `out` must be a valid pointer; `options` may be null for defaults.
NrStatus nr_table_csv(uint32_t n, const NrOptions *options, char **out);

// Constructs a verified witness for a case as JSON. `a_csv`/`lambda_csv`
// may both be null to sample an instance from the seed in `options`.
// Returns NR_INFEASIBLE_CASE when no strictly positive solution exists.
// # Safety
// String arguments must be NUL-terminated when non-null and `out` must be
// a valid pointer.
NrStatus nr_witness_json(const char *case_name,
                         const char *a_csv,
                         const char *lambda_csv,
                         const NrOptions *options,
                         char **out);

// Cross-validates one case (symbolic vs instance elimination vs direct
// solving) and returns the JSON report. Free with nr_string_free.
// # Safety
// `case_name` must be a valid NUL-terminated string and `out` a valid
// pointer; `options` may be null for defaults.
NrStatus nr_cross_validate_json(const char *case_name, const NrOptions *options, char **out);

// Releases a string produced by this library. Null is tolerated.
// # Safety
// `s` must come from this library and not be freed twice.
void nr_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NEUMANN_ROOTS_H */
