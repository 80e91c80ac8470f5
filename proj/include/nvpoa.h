/* nvpoa: newsvendor supply-chain price-of-anarchy library, C interface.
 *
 * Every function that can fail returns an int status (0 on success, one of the
 * NVPOA_* codes below otherwise) and writes results through out-parameters.
 * nvpoa_last_error() returns a thread-local message for the most recent failure
 * on the calling thread. Handles are freed with the matching *_free call.
 */
#ifndef NVPOA_H
#define NVPOA_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. */
#define NVPOA_OK 0
#define NVPOA_INVALID_ARGUMENT 1
#define NVPOA_OUT_OF_RANGE 2
#define NVPOA_INADMISSIBLE_RATIO 3
#define NVPOA_SURVIVAL_UNDERFLOW 4
#define NVPOA_NON_DIFFERENTIABLE_POINT 5
#define NVPOA_NO_CONVERGENCE 6
#define NVPOA_BRACKET_FAILURE 7
#define NVPOA_SINGULAR_PARAMETER 8
#define NVPOA_DEGENERATE_SCENARIO 9
#define NVPOA_INSUFFICIENT_DATA 10
#define NVPOA_EMPTY_BINS 11
#define NVPOA_NON_NORMALIZABLE 12
#define NVPOA_DERIVATIVE_UNAVAILABLE 13
#define NVPOA_INTERNAL 14

/* Game configurations: who stocks the inventory and who leads on price. */
#define NVPOA_CONFIG_PUSH_MANUFACTURER 0
#define NVPOA_CONFIG_PUSH_RETAILER 1
#define NVPOA_CONFIG_PULL_MANUFACTURER 2
#define NVPOA_CONFIG_PULL_RETAILER 3

#define NVPOA_METHOD_BISECTION 0
#define NVPOA_METHOD_FIXED_POINT 1

#define NVPOA_BRANCH_ALPHA_SMALL 0
#define NVPOA_BRANCH_ALPHA_LARGE 1

#define NVPOA_FAULT_NONE 0
#define NVPOA_FAULT_UNCLAMPED_LOWER 1

typedef struct nvpoa_model nvpoa_model;
typedef struct nvpoa_series nvpoa_series;
typedef struct nvpoa_fit nvpoa_fit;

const char* nvpoa_last_error(void);
const char* nvpoa_status_name(int status);

/* --- Models ------------------------------------------------------------- */

int nvpoa_model_uniform(double upper, nvpoa_model** out);
int nvpoa_model_halfnormal(double sigma, nvpoa_model** out);
int nvpoa_model_pointmass(double atom, nvpoa_model** out);
int nvpoa_model_tanh(nvpoa_model** out);
int nvpoa_model_piecewise_log(double knee, double tail_slope, nvpoa_model** out);
/* log f as an ascending polynomial in log xi on [xi_min, xi_max]. */
int nvpoa_model_empirical(const double* log_poly_coeffs, size_t n_coeffs, double xi_min,
                          double xi_max, nvpoa_model** out);
void nvpoa_model_free(nvpoa_model* m);

const char* nvpoa_model_name(const nvpoa_model* m);

/* M(Q): expected sales in units of the selling price. */
int nvpoa_order_fn(const nvpoa_model* m, double q, double* out);
/* X(Q) = M'(Q): survival function for newsvendor models. */
int nvpoa_marginal(const nvpoa_model* m, double q, double* out);
int nvpoa_marginal_at_zero(const nvpoa_model* m, double* out);
/* Generalized failure rate g(Q) = -Q X'(Q)/X(Q). */
int nvpoa_gfr(const nvpoa_model* m, double q, double* out);
/* Generalized failure rate of the second kind l(Q) = -X'(Q) M(Q)/X(Q)^2. */
int nvpoa_lfr(const nvpoa_model* m, double q, double* out);
int nvpoa_inverse_marginal(const nvpoa_model* m, double y, double* out);
/* Chain profit -r Q + M(Q). */
int nvpoa_expected_profit(const nvpoa_model* m, double r, double q, double* out);

typedef struct {
    int is_nondecreasing;
    double max_violation;
    int has_g_above_one;
    double g_above_one_lo;
    double g_above_one_hi;
} nvpoa_igfr_report;

/* Probes g on a grid over [q_lo, q_hi]; pass grid_points <= 0 for the default. */
int nvpoa_check_igfr(const nvpoa_model* m, double q_lo, double q_hi, int grid_points,
                     nvpoa_igfr_report* out);

/* --- Equilibria ---------------------------------------------------------- */

typedef struct {
    double q_c;
    double q_d;
    double w_over_p;
    double profit_c;
    double profit_d;
    double alpha; /* q_c / q_d */
    double k;     /* g(q_d); NaN at a kink corner */
    double s;     /* g(q_c) */
    double l_d;
    double l_c;
    double residual; /* NaN at a corner */
    int iterations;
    int boundary; /* nonzero when the equilibrium sits at Q_c with no interior root */
} nvpoa_equilibrium;

int nvpoa_solve_centralized(const nvpoa_model* m, double r, double* out);
int nvpoa_solve(const nvpoa_model* m, double r, int config, int method, nvpoa_equilibrium* out);

typedef struct {
    double q_d;
    double residual;
    int iterations;
    int inequality_holds;
} nvpoa_n_serial;

int nvpoa_solve_n_serial(const nvpoa_model* m, double r, int echelons, int config,
                         nvpoa_n_serial* out);

/* --- Price of anarchy and bounds ----------------------------------------- */

typedef struct {
    double poa;
    double prev_upper;
    double improved_upper;
    double lower;     /* clamped at 1 */
    double lower_raw; /* before the clamp */
    int branch;       /* NVPOA_BRANCH_* */
    int valid;        /* lower <= poa <= improved <= prev within 1e-6 */
    double k;
    double s;
    double l_d;
    double l_c;
    double alpha;
    double r_tilde;
    nvpoa_equilibrium equilibrium;
} nvpoa_report;

int nvpoa_price_of_anarchy(const nvpoa_model* m, double r, int config, double* out);
int nvpoa_poa_report(const nvpoa_model* m, double r, int config, nvpoa_report* out);

int nvpoa_prev_upper_push(double k, double* out);
int nvpoa_prev_upper_pull(double l, double* out);
int nvpoa_improved_upper_push(double k, double alpha, double* value_out, int* branch_out);
int nvpoa_improved_upper_pull(double l, double alpha, double* value_out, int* branch_out);
int nvpoa_lower_bound_push(double k, double s, double r_tilde, double* out);
int nvpoa_lower_bound_push_alpha(double k, double s, double r_tilde, double alpha, double* out);
int nvpoa_lower_bound_push_raw(double k, double s, double r_tilde, double* out);
int nvpoa_lower_bound_push_printed(double k, double s, double r_tilde, double* out);
int nvpoa_lower_bound_pull(double l, double t, double r_tilde, double* out);
int nvpoa_integral_tail_bounds(const nvpoa_model* m, double q_d, double q_c, double k, double s,
                               double* lower_out, double* upper_out);
int nvpoa_integral_head_bounds(const nvpoa_model* m, double q_d, double k, double* lower_out,
                               double* upper_out);

/* --- Correlated-demand series and density fitting ------------------------ */

int nvpoa_ar_generate(double beta, double sigma2, size_t n_samples, size_t burn_in,
                      uint64_t seed, nvpoa_series** out);
void nvpoa_series_free(nvpoa_series* s);
size_t nvpoa_series_size(const nvpoa_series* s);
const double* nvpoa_series_data(const nvpoa_series* s);

typedef struct {
    size_t n;
    double mean;
    double variance;
    double min;
    double max;
    double median;
} nvpoa_series_stats;

int nvpoa_series_summary(const nvpoa_series* s, nvpoa_series_stats* out);

int nvpoa_ar_fit(const nvpoa_series* s, size_t n_bins, const int* degrees, size_t n_degrees,
                 nvpoa_fit** out);
void nvpoa_fit_free(nvpoa_fit* f);
size_t nvpoa_fit_n_coeffs(const nvpoa_fit* f);
const double* nvpoa_fit_coeffs(const nvpoa_fit* f);
int nvpoa_fit_chosen_degree(const nvpoa_fit* f);
double nvpoa_fit_loo_cv_error(const nvpoa_fit* f);
double nvpoa_fit_normalization(const nvpoa_fit* f);
double nvpoa_fit_xi_min(const nvpoa_fit* f);
double nvpoa_fit_xi_max(const nvpoa_fit* f);
size_t nvpoa_fit_n_bins(const nvpoa_fit* f);
const double* nvpoa_fit_bin_edges(const nvpoa_fit* f); /* n_bins + 1 entries */
const double* nvpoa_fit_bin_centers(const nvpoa_fit* f);
const size_t* nvpoa_fit_bin_counts(const nvpoa_fit* f);
const double* nvpoa_fit_log_density(const nvpoa_fit* f); /* NaN on empty bins */
const double* nvpoa_fit_fitted_log_density(const nvpoa_fit* f);
size_t nvpoa_fit_n_candidates(const nvpoa_fit* f);
int nvpoa_fit_candidate_degree(const nvpoa_fit* f, size_t i);
double nvpoa_fit_candidate_loo(const nvpoa_fit* f, size_t i);
int nvpoa_fit_build_model(const nvpoa_fit* f, nvpoa_model** out);

/* --- Validation suites ---------------------------------------------------- */

typedef struct {
    const char* suite;
    const char* name;
    int passed;
    const char* detail;
} nvpoa_check;

/* suite: "invariants", "oracle" or "all"; fault: NVPOA_FAULT_*. The returned
 * array and its strings stay valid until nvpoa_validate_results_free. */
int nvpoa_validate_run(const char* suite, int fault, nvpoa_check** results_out, size_t* n_out);
void nvpoa_validate_results_free(nvpoa_check* results, size_t n);

#ifdef __cplusplus
}
#endif

#endif /* NVPOA_H */
