/*
 * qrdom: quasi-random discrete ordinates transport solver, C interface.
 *
 * All objects are opaque handles created and released by the library.
 * Every fallible call returns a qrdom_status; on failure the message is
 * available from qrdom_last_error() on the calling thread until the next
 * failing call on that thread.
 */
#ifndef QRDOM_H
#define QRDOM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QRDOM_BUILDING_LIBRARY)
#    define QRDOM_API __declspec(dllexport)
#  else
#    define QRDOM_API __declspec(dllimport)
#  endif
#else
#  define QRDOM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qrdom_status {
  QRDOM_OK = 0,
  QRDOM_ERR_CONFIG = 1,     /* invalid configuration, flags or functional text */
  QRDOM_ERR_NUMERICAL = 2,  /* non-finite values, failed fits or closures */
  QRDOM_ERR_DIVERGENCE = 3, /* an iteration cap was exhausted */
  QRDOM_ERR_CONTRACT = 4,   /* precondition violated (bad index, out-of-domain point) */
  QRDOM_ERR_ARGUMENT = 5,   /* null pointer or undersized buffer */
  QRDOM_ERR_INTERNAL = 6
} qrdom_status;

typedef struct qrdom_problem qrdom_problem;
typedef struct qrdom_result qrdom_result;

typedef struct qrdom_epoch_record {
  size_t epoch;          /* 1-based */
  uint64_t first_index;  /* first sequence index of the epoch */
  uint64_t samples;      /* directions used by the epoch */
  size_t batches;
  double gamma0;         /* extrapolated estimate */
  double gamma1;
  double gamma2;
  double residual_norm;
  double batch_change;   /* relative change at the closing batch boundary */
  double epoch_change;   /* relative change against the previous epoch, NaN for epoch 1 */
} qrdom_epoch_record;

typedef void (*qrdom_epoch_callback)(const qrdom_epoch_record* record, void* user);

typedef struct qrdom_run_options {
  double tol;
  uint64_t batch_size;
  uint64_t max_samples_per_epoch;
  size_t min_batches_first_epoch;
  size_t max_epochs;
  int fixup;            /* nonzero: set-to-zero negative-flux fixup */
  double initial_flux;
  unsigned workers;
  uint64_t seed_index;  /* first index into the quasi-random sequence, >= 1 */
  qrdom_epoch_callback on_epoch; /* optional, called on the calling thread */
  void* user;
} qrdom_run_options;

typedef struct qrdom_dom_options {
  double tol;
  size_t max_iterations;
  int fixup;
  unsigned workers;
  int n_polar;
  int n_azimuthal;
} qrdom_dom_options;

QRDOM_API const char* qrdom_version(void);
QRDOM_API const char* qrdom_last_error(void);
QRDOM_API const char* qrdom_status_name(qrdom_status status);

/* Library-allocated strings are released with qrdom_string_free. */
QRDOM_API void qrdom_string_free(char* text);

/* Problems ---------------------------------------------------------------- */

QRDOM_API qrdom_status qrdom_problem_benchmark(int id, qrdom_problem** out);
QRDOM_API qrdom_status qrdom_problem_parse(const char* json_text, qrdom_problem** out);
QRDOM_API qrdom_status qrdom_problem_to_json(const qrdom_problem* problem, char** out);
QRDOM_API qrdom_status qrdom_problem_domain(const qrdom_problem* problem, double* a, double* b);
QRDOM_API void qrdom_problem_free(qrdom_problem* problem);

/* Quasi-random directions -------------------------------------------------- */

/* Reverse Halton point (bases 2 and 3) for index >= 1. */
QRDOM_API qrdom_status qrdom_reverse_halton(uint64_t index, double out[2]);
/* First-octant direction (mu, eta, xi) for index >= 1. */
QRDOM_API qrdom_status qrdom_direction(uint64_t index, double out[3]);
/* Star discrepancy of the first n reverse Halton points starting at index 1. */
QRDOM_API qrdom_status qrdom_star_discrepancy(size_t n, double* out);

/* Functionals on raw cell-centered fields (row-major in y, nx * ny values).
 * Functional text: line:<wall> | point:x,y | domain-average | region:x0,x1,y0,y1
 * or a JSON object {"kind": "line_integral" | "point_value" | "domain_average"
 * | "region_average", ...}. Walls: bottom, right, top, left. */
QRDOM_API qrdom_status qrdom_functional_evaluate(const char* functional, const double* field,
                                                 int nx, int ny, double a, double b, double* out);
/* Wall trace: boundary-adjacent cell values along `wall`. Fills up to `capacity`
 * entries of x, y and value; `count` receives the profile length (nx or ny). */
QRDOM_API qrdom_status qrdom_field_wall_profile(const double* field, int nx, int ny, double a,
                                                double b, const char* wall, double* x, double* y,
                                                double* value, size_t capacity, size_t* count);

/* Solvers ------------------------------------------------------------------ */

QRDOM_API void qrdom_run_options_default(qrdom_run_options* options);
QRDOM_API void qrdom_dom_options_default(qrdom_dom_options* options);

QRDOM_API qrdom_status qrdom_run(const qrdom_problem* problem, int nx, int ny, const char* goal,
                                 const char* const* trials, size_t n_trials,
                                 const qrdom_run_options* options, qrdom_result** out);

QRDOM_API qrdom_status qrdom_dom(const qrdom_problem* problem, int nx, int ny, const char* goal,
                                 const qrdom_dom_options* options, qrdom_result** out);

/* Results ------------------------------------------------------------------ */

QRDOM_API void qrdom_result_free(qrdom_result* result);
QRDOM_API qrdom_status qrdom_result_grid(const qrdom_result* result, int* nx, int* ny, double* a,
                                         double* b);
/* Copies the final scalar flux; `capacity` must be at least nx * ny. */
QRDOM_API qrdom_status qrdom_result_field(const qrdom_result* result, double* buffer,
                                          size_t capacity);
/* QRDOM: extrapolated goal estimate. DOM: goal value of the converged field. */
QRDOM_API qrdom_status qrdom_result_goal(const qrdom_result* result, double* out);
/* Number of epochs (QRDOM) or source iterations (DOM). */
QRDOM_API qrdom_status qrdom_result_iterations(const qrdom_result* result, size_t* out);
/* QRDOM only; `epoch` is 1-based. */
QRDOM_API qrdom_status qrdom_result_epoch(const qrdom_result* result, size_t epoch,
                                          qrdom_epoch_record* out);
/* QRDOM only; the trial must have been declared in qrdom_run. */
QRDOM_API qrdom_status qrdom_result_trial(const qrdom_result* result, const char* trial,
                                          double* out);
QRDOM_API qrdom_status qrdom_result_report_json(const qrdom_result* result, char** out);

#ifdef __cplusplus
}
#endif

#endif /* QRDOM_H */
