/* C interface to the stlsmooth library.
 *
 * Every call returns an stls_status. On failure the message is available
 * from stls_last_error() until the next call on the same thread. Objects are
 * opaque handles released with their *_free function; strings handed out as
 * char** are heap copies released with stls_string_free. */
#ifndef STLSMOOTH_H
#define STLSMOOTH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define STLS_API __declspec(dllexport)
#else
#define STLS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define STLS_ABI_VERSION 1u

typedef enum stls_status {
  STLS_OK = 0,
  STLS_ERR_INVALID_ARGUMENT = 1,
  STLS_ERR_PARSE = 2,
  STLS_ERR_UNKNOWN_IDENTIFIER = 3,
  STLS_ERR_INTERVAL = 4,
  STLS_ERR_HORIZON = 5,
  STLS_ERR_DIMENSION = 6,
  STLS_ERR_NUMERIC = 7,
  STLS_ERR_CONFIG = 8,
  STLS_ERR_IO = 9,
  STLS_ERR_INTERNAL = 10
} stls_status;

typedef struct stls_formula stls_formula;
typedef struct stls_signal stls_signal;
typedef struct stls_config stls_config;
typedef struct stls_problem stls_problem;
typedef struct stls_result stls_result;

STLS_API uint32_t stls_abi_version(void);
STLS_API const char *stls_status_name(stls_status status);
/* Message of the last failed call on this thread ("" if none). */
STLS_API const char *stls_last_error(void);
/* 1-based position of the last parse error, 0 when not a parse error. */
STLS_API void stls_last_error_position(size_t *line, size_t *column);
STLS_API void stls_string_free(char *s);

/* ---- formulas -------------------------------------------------------- */

/* Parses `text` against predicates from `predicates_json` (may be NULL)
 * plus the channel predicates s0..s{q-1}. The result is in negation
 * normal form. */
STLS_API stls_status stls_formula_parse(const char *text, const char *predicates_json,
                                        size_t q, stls_formula **out);
STLS_API stls_status stls_formula_from_problem(const stls_problem *problem, stls_formula **out);
STLS_API void stls_formula_free(stls_formula *f);
STLS_API stls_status stls_formula_to_string(const stls_formula *f, char **out);
STLS_API stls_status stls_formula_horizon(const stls_formula *f, int *out);

/* ---- signals --------------------------------------------------------- */

STLS_API stls_status stls_signal_read_csv(const char *path, stls_signal **out);
STLS_API stls_status stls_signal_parse_csv(const char *text, stls_signal **out);
STLS_API void stls_signal_free(stls_signal *s);
STLS_API size_t stls_signal_length(const stls_signal *s);
STLS_API size_t stls_signal_width(const stls_signal *s);

/* ---- smooth configuration -------------------------------------------- */

/* SRM1, k1 = k2 = 3, noise off. */
STLS_API stls_status stls_config_new(stls_config **out);
STLS_API void stls_config_free(stls_config *c);
/* srm in 1..4 */
STLS_API stls_status stls_config_set_srm(stls_config *c, int srm);
STLS_API stls_status stls_config_set_k(stls_config *c, double k1, double k2);
STLS_API stls_status stls_config_set_noise(stls_config *c, int enabled);
/* Parameters for one node, identified by its root path ("/", "/0/1"). */
STLS_API stls_status stls_config_set_override(stls_config *c, const char *node, double k1,
                                              double k2);
STLS_API int stls_config_srm(const stls_config *c);

/* ---- evaluation ------------------------------------------------------ */

typedef struct stls_eval_result {
  double exact;  /* robustness */
  double smooth; /* smooth robustness */
  double lo;     /* error interval: exact - smooth lies in [lo, hi] */
  double hi;
  int verdict;   /* 1 satisfied, -1 violated, 0 boundary */
} stls_eval_result;

STLS_API stls_status stls_eval(const stls_formula *f, const stls_signal *s, const stls_config *c,
                               stls_eval_result *out);
/* Signal-dependent error report as JSON. */
STLS_API stls_status stls_error_report_json(const stls_formula *f, const stls_signal *s,
                                            const stls_config *c, char **out);
/* Signal-free bounds; range_bound limits Soft operator input spread. */
STLS_API stls_status stls_bounds(const stls_formula *f, const stls_config *c, double range_bound,
                                 double *lo, double *hi, char **report_json);

/* ---- synthesis ------------------------------------------------------- */

STLS_API stls_status stls_problem_load(const char *path, stls_problem **out);
STLS_API stls_status stls_problem_parse(const char *json, stls_problem **out);
/* Built-in benchmark problem 1..4 with [-noise, noise] on every predicate. */
STLS_API stls_status stls_problem_builtin(int id, double noise, stls_problem **out);
STLS_API void stls_problem_free(stls_problem *p);
/* Copy of the smooth settings stored with the problem. */
STLS_API stls_status stls_problem_config(const stls_problem *p, stls_config **out);

typedef struct stls_synth_options {
  int max_iters;         /* default 500 */
  double step_size;      /* default 0.05 */
  uint64_t seed;
  int zero_init;         /* 0: uniform in [-0.1, 0.1] */
  int has_stop;          /* stop once exact robustness > stop_target is certified */
  double stop_target;
  int tune_every;        /* 0 disables on-line tuning */
  double tune_alpha;
  int switch_period;     /* > 0: alternate SRM2/SRM3 with the config's k */
  int warm_start;        /* nonzero: SRM3 stage first, then the config */
} stls_synth_options;

STLS_API void stls_synth_options_default(stls_synth_options *o);
STLS_API stls_status stls_synthesize(const stls_problem *p, const stls_config *c,
                                     const stls_synth_options *o, stls_result **out);
STLS_API void stls_result_free(stls_result *r);

typedef struct stls_result_summary {
  double smooth_value;
  double exact_value;
  double smooth_cost;
  double exact_cost;
  double lo;
  double hi;
  int iterations;
  int certified;
  double gap; /* switching runs only, else 0 */
} stls_result_summary;

STLS_API stls_status stls_result_summary_get(const stls_result *r, stls_result_summary *out);
STLS_API stls_status stls_result_json(const stls_result *r, char **out);
STLS_API stls_status stls_result_trajectory_csv(const stls_result *r, char **out);
STLS_API stls_status stls_result_trace_csv(const stls_result *r, char **out);

/* ---- benchmark ------------------------------------------------------- */

typedef struct stls_bench_options {
  const int *scps;
  size_t n_scps;
  const int *srms; /* 1..4 */
  size_t n_srms;
  const double *ks;
  size_t n_ks;
  int realizations;
  int max_iters;
  double noise;
  int timing; /* adds wall_ms */
} stls_bench_options;

/* Writes runs.csv and means.csv into out_dir. */
STLS_API stls_status stls_bench(const stls_bench_options *o, const char *out_dir);

/* ---- gradient check -------------------------------------------------- */

typedef struct stls_grad_check_report {
  double max_rel_error;       /* explicit vs central differences */
  double max_adjoint_dense;   /* adjoint vs dense chain rule, relative */
  double explicit_ms;         /* mean per gradient */
  double finite_diff_ms;
  int trials;
} stls_grad_check_report;

/* Random controls from `seed`; each trial draws a fresh point. */
STLS_API stls_status stls_grad_check(const stls_problem *p, const stls_config *c, int trials,
                                     uint64_t seed, stls_grad_check_report *out);

#ifdef __cplusplus
}
#endif

#endif
