/* gqv.h -- C API for the fractional Gaussian quadratic-variation laboratory.
 *
 * The library computes exact cumulants of the renormalized quadratic
 * variation of fractional Gaussian processes (fBm, sub-fBm, bi-fBm,
 * generalized sub-fBm, tabulated kernels), verifies the covariance
 * hypothesis bounds numerically, samples the statistic by Monte Carlo,
 * and fits decay exponents against the theoretical rate regimes.
 *
 * All entry points return a gqv_status; results come back through out
 * parameters. Handles are opaque and must be released with the matching
 * _free function. Unless noted otherwise, functions are pure and safe to
 * call from multiple threads on distinct handles.
 */

#ifndef GQV_H
#define GQV_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gqv_status {
  GQV_OK = 0,
  GQV_ERR_INVALID_ARG = 1,   /* parameter outside admissible range */
  GQV_ERR_SIZE = 2,          /* n above the configured cap */
  GQV_ERR_DOMAIN = 3,        /* mathematical domain error (divergent series, ...) */
  GQV_ERR_NOT_PSD = 4,       /* covariance matrix indefinite beyond jitter budget */
  GQV_ERR_OUT_OF_RANGE = 5,  /* tabulated query outside the grid */
  GQV_ERR_IO = 6,            /* file read/parse failure */
  GQV_ERR_UNSUPPORTED = 7,   /* unsupported function spec / enumeration too large */
  GQV_ERR_INTERNAL = 8
} gqv_status;

/* Human-readable name for a status code. Never returns NULL. */
const char* gqv_strerror(gqv_status status);

/* ------------------------------------------------------------------ */
/* Covariance models                                                   */
/* ------------------------------------------------------------------ */

typedef struct gqv_model gqv_model;

gqv_status gqv_model_create_fbm(double hurst, gqv_model** out);
gqv_status gqv_model_create_subfbm(double hurst, gqv_model** out);
/* bi-fBm: H' in (0,1), K in (0,1); effective Hurst index is H'K. */
gqv_status gqv_model_create_bifbm(double h_prime, double k, gqv_model** out);
/* generalized sub-fBm: H' in (0,1), K in [1,2), H'K in (0,1). */
gqv_status gqv_model_create_gsfbm(double h_prime, double k, gqv_model** out);
/* Tabulated covariance from CSV: header "T,<horizon>,step,<dt>" then
 * rows "t,s,R" for the upper triangle; the reader symmetrizes.
 * The effective Hurst index must be supplied by the caller. */
gqv_status gqv_model_create_tabulated(const char* csv_path, double hurst,
                                      gqv_model** out);
void gqv_model_free(gqv_model* model);

/* R(t,s); bilinear interpolation for tabulated models. */
gqv_status gqv_model_cov(const gqv_model* model, double t, double s,
                         double* out);
/* Effective Hurst index H (H'K for the two-parameter families). */
double gqv_model_hurst(const gqv_model* model);
/* Short textual id, e.g. "fbm" or "bifbm". */
const char* gqv_model_kind(const gqv_model* model);

/* ------------------------------------------------------------------ */
/* Increment covariance                                                */
/* ------------------------------------------------------------------ */

typedef struct gqv_inc gqv_inc;

/* Builds the n x n increment covariance theta(i,j) together with the
 * stationary row rho(0..n-1) and the perturbation gamma = theta - Toeplitz(rho).
 * size_cap <= 0 selects the default cap (8192). */
gqv_status gqv_inc_create(const gqv_model* model, int64_t n, int64_t size_cap,
                          gqv_inc** out);
void gqv_inc_free(gqv_inc* inc);

int64_t gqv_inc_n(const gqv_inc* inc);
gqv_status gqv_inc_theta(const gqv_inc* inc, int64_t i, int64_t j, double* out);
gqv_status gqv_inc_gamma(const gqv_inc* inc, int64_t i, int64_t j, double* out);
gqv_status gqv_inc_rho(const gqv_inc* inc, int64_t lag, double* out);

/* ------------------------------------------------------------------ */
/* Stationary correlation rho and structured rho-sums                  */
/* ------------------------------------------------------------------ */

/* rho(r) = ((|r+1|^{2H} + |r-1|^{2H} - 2|r|^{2H}) / 2; stable for |r| up to 1e8. */
double gqv_rho(double hurst, int64_t lag);

/* 2 * sum_{|r|<=r_max} rho^2(r) with an integral tail bound; requires H < 3/4. */
gqv_status gqv_sigma_sq_series(double hurst, int64_t r_max, double* value,
                               double* tail_bound);

/* sum_{i,j<n} rho^2(i-j), O(n) in the lag-weighted form. */
gqv_status gqv_rho_sq_lag_sum(double hurst, int64_t n, double* out);

/* sum_{j,k,l<n} rho(j-k) rho(k-l) rho(j-l), O(n^2) lag-count reduction. */
gqv_status gqv_rho_triple_sum(double hurst, int64_t n, double* out);

/* sum_{i,j,k,l<n} rho(i-j) rho(i-k) rho(k-l) rho(j-l): the squared
 * Frobenius norm of the squared Toeplitz matrix. */
gqv_status gqv_rho_quad_sum(double hurst, int64_t n, double* out);

/* ------------------------------------------------------------------ */
/* Cumulants                                                           */
/* ------------------------------------------------------------------ */

typedef struct gqv_cumulant_report {
  int64_t n;
  double sigma_n_sq; /* E[Z_n^2] = 2 sum theta^2 */
  double kappa3_f;   /* third cumulant of F_n = Z_n / sqrt(n) */
  double kappa4_f;   /* fourth cumulant of F_n */
  double kappa3_v;   /* third cumulant of V_n = Z_n / sigma_n */
  double kappa4_v;   /* fourth cumulant of V_n, strictly positive */
  double m_stat;     /* max(|kappa3_v|, kappa4_v) */
} gqv_cumulant_report;

gqv_status gqv_cumulants_from_inc(const gqv_inc* inc, gqv_cumulant_report* out);
/* Computes the report without materializing theta when the model allows
 * it (fBm uses an O(n^2)-time, O(n)-memory Toeplitz path). */
gqv_status gqv_cumulants_compute(const gqv_model* model, int64_t n,
                                 gqv_cumulant_report* out);

typedef struct gqv_mixed_sum_report {
  int64_t n;
  double triple[3]; /* |sum ggg|, |sum ggr|, |sum grr| */
  double quad[4];   /* |sum gggg|, |sum gggr|, |sum ggrr|, |sum grrr| */
  double triple_ratio[3]; /* triple[i] / n^{(6H-3) v 0} */
  double quad_ratio[4];   /* quad[i] / n^{(8H-4) v 0} */
} gqv_mixed_sum_report;

/* Mixed gamma/rho sums of the third- and fourth-cumulant decompositions. */
gqv_status gqv_mixed_sums(const gqv_inc* inc, gqv_mixed_sum_report* out);

/* |<f_k, f_l>| = sum_{i<k,j<l} theta(i,j)^2 / (sigma_k sigma_l) together
 * with the bound shape sqrt(k/l) + (kl)^{(2H-1) v 0 - 1/2}; requires k < l. */
gqv_status gqv_asclt_condition2(const gqv_model* model, int64_t k, int64_t l,
                                double* lhs, double* rhs_shape);

/* ------------------------------------------------------------------ */
/* Hypothesis checks                                                   */
/* ------------------------------------------------------------------ */

typedef struct gqv_psi_point {
  double t, s;
  double psi;      /* finite-difference estimate of the mixed partial of R - R^B */
  double bound;    /* c_h_prime * (ts)^{H-1} */
  int rejected;    /* 1 when the point sits inside the diagonal exclusion band */
} gqv_psi_point;

typedef struct gqv_psi_report {
  double fitted_constant; /* sup |psi| (ts)^{1-H} over accepted points */
  double max_ratio;       /* sup |psi| / (ts)^{H-1} / c_h_prime */
  int pass;
} gqv_psi_report;

/* ts_pairs holds npts (t,s) pairs flattened; points may be NULL. */
gqv_status gqv_psi_scan(const gqv_model* model, double c_h_prime,
                        const double* ts_pairs, size_t npts, double step,
                        gqv_psi_point* points, gqv_psi_report* out);

typedef struct gqv_gamma_bound_report {
  double max_ratio;
  int64_t argmax_i, argmax_j;
  int pass;
} gqv_gamma_bound_report;

/* |gamma(i,j)| <= (c_h_prime / H^2) [(i+1)^H - i^H][(j+1)^H - j^H]. */
gqv_status gqv_gamma_bound_check(const gqv_inc* inc, double c_h_prime,
                                 gqv_gamma_bound_report* out);

typedef struct gqv_tail_bound_report {
  int increment_bound_ok; /* (i+1)^H - i^H <= H i^{H-1} for 1 <= i < n */
  int ratios_bounded;     /* S(m)/m^{(2H-1) v 0} bounded over doublings */
  int informational;      /* 1 at H = 1/2 where the envelope is logarithmic */
  double max_ratio;
  int pass;
} gqv_tail_bound_report;

gqv_status gqv_increment_tail_bound_check(double hurst, int64_t n,
                                          gqv_tail_bound_report* out);

/* ------------------------------------------------------------------ */
/* Monte Carlo simulation                                              */
/* ------------------------------------------------------------------ */

typedef struct gqv_mc_result {
  int64_t n, reps;
  uint64_t seed;
  double ks_distance;
  double empirical_mean;
  double empirical_var;
} gqv_mc_result;

/* Samples `reps` replicas of V_n (exact Gaussian sampling through a
 * Cholesky factor of theta), deterministic for a given seed. When
 * `samples` is non-NULL it must hold reps doubles and receives the raw
 * replicas in replica order. threads <= 0 selects the hardware count. */
gqv_status gqv_mc_run(const gqv_model* model, int64_t n, int64_t reps,
                      uint64_t seed, int threads, double* samples,
                      gqv_mc_result* out);

typedef enum gqv_test_fn {
  GQV_FN_ONE = 0,           /* phi == 1, isolates the weight normalization */
  GQV_FN_INDICATOR_LEQ0 = 1,/* phi(x) = 1(x <= 0), E phi(N) = 1/2 */
  GQV_FN_SQUARE = 2         /* phi(x) = x^2, E phi(N) = 1 */
} gqv_test_fn;

typedef struct gqv_asclt_result {
  int64_t n;
  double log_average; /* (1/log n) sum_{k<=n} phi(V_k)/k along one path */
  double target;      /* E[phi(N)] */
} gqv_asclt_result;

gqv_status gqv_asclt_average(const gqv_model* model, int64_t n, gqv_test_fn phi,
                             uint64_t seed, gqv_asclt_result* out);

/* ------------------------------------------------------------------ */
/* Rate fits                                                           */
/* ------------------------------------------------------------------ */

typedef enum gqv_regime {
  GQV_REGIME_OPTIMAL_SQRT = 0, /* H < 2/3:  d_TV ~ n^{-1/2} two-sided */
  GQV_REGIME_CRITICAL_23 = 1,  /* H = 2/3:  n^{-1/2} log^2 n */
  GQV_REGIME_UPPER_34 = 2,     /* 2/3 < H < 3/4: upper bound n^{(4H-3)/2} */
  GQV_REGIME_BOUNDARY_34 = 3   /* H = 3/4:  (log n)^{-3/2} */
} gqv_regime;

gqv_status gqv_theoretical_exponent(double hurst, gqv_regime* regime,
                                    double* exponent, double* log_power);

typedef struct gqv_rate_fit {
  double exponent;  /* slope of log y against log n */
  double log_power; /* fitted power of log n (log-corrected model only) */
  double r_squared;
} gqv_rate_fit;

/* OLS fit of log y = log c + a log n (+ b log log n). At least four
 * points, n strictly increasing, y > 0. */
gqv_status gqv_fit_power_law(const double* n, const double* y, size_t count,
                             int with_log, gqv_rate_fit* out);

typedef enum gqv_rate_use {
  GQV_USE_KAPPA3 = 0,
  GQV_USE_KAPPA4 = 1,
  GQV_USE_M_STAT = 2,
  GQV_USE_KS = 3
} gqv_rate_use;

typedef struct gqv_regime_report {
  gqv_rate_fit fit;
  double theoretical_exponent;
  double theoretical_log_power;
  double sharper_exponent; /* rho-sum regime prediction; NaN when not applicable */
  int two_sided;           /* 1 where the rate is an equivalence, not just an upper bound */
  int proxy;               /* 1 for KS-based fits (KS <= d_TV only) */
  int pass;
} gqv_regime_report;

/* Computes the chosen statistic over n_list, fits, and compares against
 * the regime table. `points` may be NULL or hold count doubles.
 * reps/seed are used for GQV_USE_KS only. */
gqv_status gqv_regime_check(const gqv_model* model, const int64_t* n_list,
                            size_t count, gqv_rate_use use, int with_log,
                            int64_t reps, uint64_t seed,
                            gqv_regime_report* out, double* points);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GQV_H */
