/* mvfp — Hausdorff metrics, contraction gauges and set-valued fixed-point
 * iteration behind a plain C interface.
 *
 * Every entry point returns an mvfp_status; results come back through out
 * parameters. Strings returned by the library are heap-allocated and must
 * be released with mvfp_string_free. Handles are opaque and freed with
 * their matching *_free function. On any failure mvfp_last_error() gives a
 * thread-local diagnostic message.
 */
#ifndef MVFP_H
#define MVFP_H

#include <stddef.h>

#if defined(_WIN32)
#define MVFP_API __declspec(dllexport)
#else
#define MVFP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mvfp_status {
  MVFP_OK = 0,
  MVFP_ERR_PARSE = 1,
  MVFP_ERR_VALIDATION = 2,
  MVFP_ERR_MIXED_MODE = 3,
  MVFP_ERR_INCOMPATIBLE_POINTS = 4,
  MVFP_ERR_EMPTY_SET = 5,
  MVFP_ERR_LEVEL_MISMATCH = 6,
  MVFP_ERR_LEVEL_CAP = 7,
  MVFP_ERR_CODOMAIN = 8,
  MVFP_ERR_NEGATIVE_ARGUMENT = 9,
  MVFP_ERR_EMPTY_PROBE_SET = 10,
  MVFP_ERR_NO_PROBES_RIGHT_OF_T0 = 11,
  MVFP_ERR_ZERO_DISTANCE_PAIR = 12,
  MVFP_ERR_BOUND_UNACHIEVABLE = 13,
  MVFP_ERR_DOMAIN_ESCAPE = 14,
  MVFP_ERR_DIVISION_BY_ZERO = 15,
  MVFP_ERR_PRECISION_EXHAUSTED = 16,
  MVFP_ERR_INVALID_ARGUMENT = 17,
  MVFP_ERR_IO = 18,
  MVFP_ERR_INTERNAL = 99
} mvfp_status;

typedef enum mvfp_outcome {
  MVFP_OUTCOME_FIXED_POINT = 0,
  MVFP_OUTCOME_MAX_ITER_EXCEEDED = 1,
  MVFP_OUTCOME_BOUND_VIOLATION = 2
} mvfp_outcome;

typedef struct mvfp_problem mvfp_problem;
typedef struct mvfp_trace mvfp_trace;

MVFP_API const char* mvfp_version(void);

/* Thread-local message describing the most recent failure. */
MVFP_API const char* mvfp_last_error(void);

MVFP_API void mvfp_string_free(char* s);

/* Global comparison tolerance for float-mode scalars (default 1e-12). */
MVFP_API mvfp_status mvfp_set_float_tolerance(double tol);
MVFP_API double mvfp_float_tolerance(void);

/* ---- problem files --------------------------------------------------- */

MVFP_API mvfp_status mvfp_problem_parse(const char* json_text, mvfp_problem** out);
MVFP_API void mvfp_problem_free(mvfp_problem* p);
MVFP_API mvfp_status mvfp_problem_emit(const mvfp_problem* p, char** json_out);

/* ---- Hausdorff distances --------------------------------------------- */

/* set_a / set_b: comma-separated point ids or "@Name" for a set declared
 * in the file. Nested named sets of equal level use the iterated
 * hyperspace distance. accelerated != 0 uses the early-break/kd path
 * (level-1 dense points only). The value is rendered exactly in rational
 * mode ("p/q") and as a shortest-round-trip decimal in float mode. */
MVFP_API mvfp_status mvfp_hausdorff_between(const mvfp_problem* p,
                                            const char* set_a,
                                            const char* set_b,
                                            int accelerated,
                                            char** value_out);

/* ---- fixed-point iteration ------------------------------------------- */

/* x0_id / tol_text / max_iter override the problem file when non-null /
 * positive. */
MVFP_API mvfp_status mvfp_iterate(const mvfp_problem* p, const char* x0_id,
                                  const char* tol_text, long max_iter,
                                  mvfp_trace** out);
MVFP_API void mvfp_trace_free(mvfp_trace* t);
MVFP_API mvfp_status mvfp_trace_outcome(const mvfp_trace* t, mvfp_outcome* out);
MVFP_API mvfp_status mvfp_trace_step_count(const mvfp_trace* t, size_t* out);
MVFP_API mvfp_status mvfp_trace_csv(const mvfp_trace* t, char** csv_out);
MVFP_API mvfp_status mvfp_trace_summary_json(const mvfp_trace* t, char** json_out);
/* Re-checks the recorded orbit against the problem's gauge: per-step
 * contraction, strict monotone decrease, the pairwise bound and the
 * running-product bound. */
MVFP_API mvfp_status mvfp_trace_verify_json(const mvfp_trace* t,
                                            const mvfp_problem* p,
                                            char** json_out);

/* ---- built-in exact instance ------------------------------------------ */

/* sweep_depth <= 0 means the default (min(depth, 30)); nadler_r may be
 * null. format: 0 = JSON, 1 = plain text. */
MVFP_API mvfp_status mvfp_verify_example(long depth, long sweep_depth,
                                         const char* nadler_r, int format,
                                         char** report_out);
MVFP_API mvfp_status mvfp_example_problem(long depth, char** json_out);
MVFP_API mvfp_status mvfp_example_tau(long n, char** value_out);
MVFP_API mvfp_status mvfp_example_orbit(long depth, long start_index,
                                        mvfp_trace** out);

/* ---- gauge checks ------------------------------------------------------ */

/* gauge_json: the problem-file gauge object, e.g.
 *   {"kind":"constant","value":"1/2"}.
 * options_json (optional): {"mode":"rational"|"float",
 *   "probes":[...], "tau_probes":N, "eps_grid":[...],
 *   "t0":"0", "deltas":[...]}
 * The report carries both the class-S table and the right-limsup verdict.
 * format: 0 = JSON, 1 = plain text. */
MVFP_API mvfp_status mvfp_check_gauge(const char* gauge_json,
                                      const char* options_json, int format,
                                      char** report_out);

/* ---- contraction-constant estimate ------------------------------------- */

/* pairs: "a:b,c:d" or null for all distinct point pairs. */
MVFP_API mvfp_status mvfp_nadler_constant(const mvfp_problem* p,
                                          const char* pairs, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* MVFP_H */
