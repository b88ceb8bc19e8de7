#include "gqv.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "core/covariance.hpp"
#include "core/cumulants.hpp"
#include "core/error.hpp"
#include "core/hypothesis.hpp"
#include "core/rates.hpp"
#include "core/rho.hpp"
#include "core/simulation.hpp"

struct gqv_model {
  gqv::CovarianceModel model;
};

struct gqv_inc {
  gqv::IncrementCovariance inc;
};

namespace {

gqv_status status_of(gqv::ErrorCode code) {
  switch (code) {
    case gqv::ErrorCode::InvalidArg: return GQV_ERR_INVALID_ARG;
    case gqv::ErrorCode::Size: return GQV_ERR_SIZE;
    case gqv::ErrorCode::Domain: return GQV_ERR_DOMAIN;
    case gqv::ErrorCode::NotPsd: return GQV_ERR_NOT_PSD;
    case gqv::ErrorCode::OutOfRange: return GQV_ERR_OUT_OF_RANGE;
    case gqv::ErrorCode::Io: return GQV_ERR_IO;
    case gqv::ErrorCode::Unsupported: return GQV_ERR_UNSUPPORTED;
    case gqv::ErrorCode::Internal: return GQV_ERR_INTERNAL;
  }
  return GQV_ERR_INTERNAL;
}

template <typename Fn>
gqv_status guarded(Fn&& fn) {
  try {
    fn();
    return GQV_OK;
  } catch (const gqv::Error& e) {
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    return GQV_ERR_INTERNAL;
  } catch (const std::exception&) {
    return GQV_ERR_INTERNAL;
  }
}

template <typename Fn>
gqv_status make_model(gqv_model** out, Fn&& fn) {
  if (!out) return GQV_ERR_INVALID_ARG;
  *out = nullptr;
  return guarded([&] { *out = new gqv_model{fn()}; });
}

gqv_cumulant_report to_c(const gqv::CumulantReport& r) {
  return {r.n, r.sigma_n_sq, r.kappa3_f, r.kappa4_f, r.kappa3_v, r.kappa4_v,
          r.m_stat};
}

}  // namespace

const char* gqv_strerror(gqv_status status) {
  switch (status) {
    case GQV_OK: return "ok";
    case GQV_ERR_INVALID_ARG: return "invalid argument";
    case GQV_ERR_SIZE: return "size above cap";
    case GQV_ERR_DOMAIN: return "domain error";
    case GQV_ERR_NOT_PSD: return "covariance not positive semidefinite";
    case GQV_ERR_OUT_OF_RANGE: return "query outside tabulated grid";
    case GQV_ERR_IO: return "i/o error";
    case GQV_ERR_UNSUPPORTED: return "unsupported";
    case GQV_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

gqv_status gqv_model_create_fbm(double hurst, gqv_model** out) {
  return make_model(out, [&] { return gqv::CovarianceModel::fbm(hurst); });
}

gqv_status gqv_model_create_subfbm(double hurst, gqv_model** out) {
  return make_model(out, [&] { return gqv::CovarianceModel::subfbm(hurst); });
}

gqv_status gqv_model_create_bifbm(double h_prime, double k, gqv_model** out) {
  return make_model(out, [&] { return gqv::CovarianceModel::bifbm(h_prime, k); });
}

gqv_status gqv_model_create_gsfbm(double h_prime, double k, gqv_model** out) {
  return make_model(out,
                    [&] { return gqv::CovarianceModel::gen_subfbm(h_prime, k); });
}

gqv_status gqv_model_create_tabulated(const char* csv_path, double hurst,
                                      gqv_model** out) {
  if (!csv_path) return GQV_ERR_INVALID_ARG;
  return make_model(out, [&] {
    return gqv::CovarianceModel::tabulated_from_csv(csv_path, hurst);
  });
}

void gqv_model_free(gqv_model* model) { delete model; }

gqv_status gqv_model_cov(const gqv_model* model, double t, double s,
                         double* out) {
  if (!model || !out) return GQV_ERR_INVALID_ARG;
  return guarded([&] { *out = model->model.cov(t, s); });
}

double gqv_model_hurst(const gqv_model* model) {
  return model ? model->model.hurst() : 0.0;
}

const char* gqv_model_kind(const gqv_model* model) {
  return model ? gqv::kind_name(model->model.kind()) : "null";
}

gqv_status gqv_inc_create(const gqv_model* model, int64_t n, int64_t size_cap,
                          gqv_inc** out) {
  if (!model || !out) return GQV_ERR_INVALID_ARG;
  *out = nullptr;
  return guarded([&] {
    if (size_cap <= 0) size_cap = gqv::kDefaultSizeCap;
    *out = new gqv_inc{gqv::increment_covariance(model->model, n, size_cap)};
  });
}

void gqv_inc_free(gqv_inc* inc) { delete inc; }

int64_t gqv_inc_n(const gqv_inc* inc) { return inc ? inc->inc.n : 0; }

gqv_status gqv_inc_theta(const gqv_inc* inc, int64_t i, int64_t j, double* out) {
  if (!inc || !out) return GQV_ERR_INVALID_ARG;
  if (i < 0 || j < 0 || i >= inc->inc.n || j >= inc->inc.n)
    return GQV_ERR_OUT_OF_RANGE;
  *out = inc->inc.theta.at(i, j);
  return GQV_OK;
}

gqv_status gqv_inc_gamma(const gqv_inc* inc, int64_t i, int64_t j, double* out) {
  if (!inc || !out) return GQV_ERR_INVALID_ARG;
  if (i < 0 || j < 0 || i >= inc->inc.n || j >= inc->inc.n)
    return GQV_ERR_OUT_OF_RANGE;
  *out = inc->inc.gamma.at(i, j);
  return GQV_OK;
}

gqv_status gqv_inc_rho(const gqv_inc* inc, int64_t lag, double* out) {
  if (!inc || !out) return GQV_ERR_INVALID_ARG;
  if (lag < 0 || lag >= inc->inc.n) return GQV_ERR_OUT_OF_RANGE;
  *out = inc->inc.rho_row[static_cast<size_t>(lag)];
  return GQV_OK;
}

double gqv_rho(double hurst, int64_t lag) { return gqv::rho(hurst, lag); }

gqv_status gqv_sigma_sq_series(double hurst, int64_t r_max, double* value,
                               double* tail_bound) {
  if (!value || !tail_bound) return GQV_ERR_INVALID_ARG;
  return guarded([&] {
    const gqv::SeriesSum s = gqv::sigma_sq_series(hurst, r_max);
    *value = s.value;
    *tail_bound = s.tail_bound;
  });
}

gqv_status gqv_rho_sq_lag_sum(double hurst, int64_t n, double* out) {
  if (!out) return GQV_ERR_INVALID_ARG;
  return guarded([&] { *out = gqv::rho_sq_lag_sum(hurst, n); });
}

gqv_status gqv_rho_triple_sum(double hurst, int64_t n, double* out) {
  if (!out) return GQV_ERR_INVALID_ARG;
  return guarded([&] { *out = gqv::rho_triple_sum(hurst, n); });
}

gqv_status gqv_rho_quad_sum(double hurst, int64_t n, double* out) {
  if (!out) return GQV_ERR_INVALID_ARG;
  return guarded([&] { *out = gqv::rho_quad_sum(hurst, n); });
}

gqv_status gqv_cumulants_from_inc(const gqv_inc* inc, gqv_cumulant_report* out) {
  if (!inc || !out) return GQV_ERR_INVALID_ARG;
  return guarded([&] { *out = to_c(gqv::cumulant_report(inc->inc)); });
}

gqv_status gqv_cumulants_compute(const gqv_model* model, int64_t n,
                                 gqv_cumulant_report* out) {
  if (!model || !out) return GQV_ERR_INVALID_ARG;
  return guarded([&] { *out = to_c(gqv::cumulant_report(model->model, n)); });
}

gqv_status gqv_mixed_sums(const gqv_inc* inc, gqv_mixed_sum_report* out) {
  if (!inc || !out) return GQV_ERR_INVALID_ARG;
  return guarded([&] {
    const gqv::MixedSumReport r = gqv::mixed_sum_bounds(inc->inc);
    out->n = r.n;
    std::memcpy(out->triple, r.triple, sizeof r.triple);
    std::memcpy(out->quad, r.quad, sizeof r.quad);
    std::memcpy(out->triple_ratio, r.triple_ratio, sizeof r.triple_ratio);
    std::memcpy(out->quad_ratio, r.quad_ratio, sizeof r.quad_ratio);
  });
}

gqv_status gqv_asclt_condition2(const gqv_model* model, int64_t k, int64_t l,
                                double* lhs, double* rhs_shape) {
  if (!model || !lhs || !rhs_shape) return GQV_ERR_INVALID_ARG;
  return guarded([&] {
    const gqv::Condition2Bound b = gqv::asclt_condition2_bound(model->model, k, l);
    *lhs = b.lhs;
    *rhs_shape = b.rhs_shape;
  });
}

gqv_status gqv_psi_scan(const gqv_model* model, double c_h_prime,
                        const double* ts_pairs, size_t npts, double step,
                        gqv_psi_point* points, gqv_psi_report* out) {
  if (!model || !out || (npts > 0 && !ts_pairs)) return GQV_ERR_INVALID_ARG;
  return guarded([&] {
    std::vector<std::pair<double, double>> grid;
    grid.reserve(npts);
    for (size_t i = 0; i < npts; ++i)
      grid.emplace_back(ts_pairs[2 * i], ts_pairs[2 * i + 1]);
    if (grid.empty()) grid = gqv::default_psi_grid();
    const gqv::PsiScanReport r = gqv::psi_scan(model->model, c_h_prime, grid, step);
    if (points)
      for (size_t i = 0; i < r.points.size() && i < npts; ++i) {
        const gqv::PsiEstimate& p = r.points[i];
        points[i] = {p.t, p.s, p.psi, p.bound, p.rejected ? 1 : 0};
      }
    out->fitted_constant = r.fitted_constant;
    out->max_ratio = r.max_ratio;
    out->pass = r.pass ? 1 : 0;
  });
}

gqv_status gqv_gamma_bound_check(const gqv_inc* inc, double c_h_prime,
                                 gqv_gamma_bound_report* out) {
  if (!inc || !out) return GQV_ERR_INVALID_ARG;
  return guarded([&] {
    const gqv::GammaBoundReport r = gqv::gamma_bound_check(inc->inc, c_h_prime);
    out->max_ratio = r.max_ratio;
    out->argmax_i = r.argmax_i;
    out->argmax_j = r.argmax_j;
    out->pass = r.pass ? 1 : 0;
  });
}

gqv_status gqv_increment_tail_bound_check(double hurst, int64_t n,
                                          gqv_tail_bound_report* out) {
  if (!out) return GQV_ERR_INVALID_ARG;
  return guarded([&] {
    const gqv::TailBoundReport r = gqv::increment_tail_bound_check(hurst, n);
    out->increment_bound_ok = r.increment_bound_ok ? 1 : 0;
    out->ratios_bounded = r.ratios_bounded ? 1 : 0;
    out->informational = r.informational ? 1 : 0;
    out->max_ratio = r.max_ratio;
    out->pass = r.pass ? 1 : 0;
  });
}

gqv_status gqv_mc_run(const gqv_model* model, int64_t n, int64_t reps,
                      uint64_t seed, int threads, double* samples,
                      gqv_mc_result* out) {
  if (!model || !out) return GQV_ERR_INVALID_ARG;
  return guarded([&] {
    const gqv::IncrementCovariance inc =
        gqv::increment_covariance(model->model, n);
    const gqv::CholeskyFactor f = gqv::cholesky_factor(inc);
    const double sigma = std::sqrt(gqv::sigma_n_sq(inc));
    const gqv::McRun run = gqv::sample_vn(f, sigma, reps, seed, threads);
    if (samples)
      std::memcpy(samples, run.samples.data(), run.samples.size() * sizeof(double));
    out->n = run.n;
    out->reps = run.reps;
    out->seed = run.seed;
    out->ks_distance = run.ks_distance;
    out->empirical_mean = run.empirical_mean;
    out->empirical_var = run.empirical_var;
  });
}

gqv_status gqv_asclt_average(const gqv_model* model, int64_t n, gqv_test_fn phi,
                             uint64_t seed, gqv_asclt_result* out) {
  if (!model || !out) return GQV_ERR_INVALID_ARG;
  if (phi < GQV_FN_ONE || phi > GQV_FN_SQUARE) return GQV_ERR_INVALID_ARG;
  return guarded([&] {
    const gqv::AscltResult r = gqv::asclt_average(
        model->model, n, static_cast<gqv::TestFn>(phi), seed);
    out->n = r.n;
    out->log_average = r.log_average;
    out->target = r.target;
  });
}

gqv_status gqv_theoretical_exponent(double hurst, gqv_regime* regime,
                                    double* exponent, double* log_power) {
  if (!regime || !exponent || !log_power) return GQV_ERR_INVALID_ARG;
  return guarded([&] {
    const gqv::TheoreticalRate t = gqv::theoretical_exponent(hurst);
    *regime = static_cast<gqv_regime>(t.regime);
    *exponent = t.exponent;
    *log_power = t.log_power;
  });
}

gqv_status gqv_fit_power_law(const double* n, const double* y, size_t count,
                             int with_log, gqv_rate_fit* out) {
  if (!n || !y || !out) return GQV_ERR_INVALID_ARG;
  return guarded([&] {
    const gqv::RateFit f = gqv::fit_power_law(
        std::vector<double>(n, n + count), std::vector<double>(y, y + count),
        with_log != 0);
    out->exponent = f.exponent;
    out->log_power = f.log_power;
    out->r_squared = f.r_squared;
  });
}

gqv_status gqv_regime_check(const gqv_model* model, const int64_t* n_list,
                            size_t count, gqv_rate_use use, int with_log,
                            int64_t reps, uint64_t seed,
                            gqv_regime_report* out, double* points) {
  if (!model || !n_list || !out) return GQV_ERR_INVALID_ARG;
  if (use < GQV_USE_KAPPA3 || use > GQV_USE_KS) return GQV_ERR_INVALID_ARG;
  return guarded([&] {
    const gqv::RegimeReport r = gqv::regime_check(
        model->model, std::vector<int64_t>(n_list, n_list + count),
        static_cast<gqv::RateUse>(use), with_log != 0, reps, seed);
    out->fit = {r.fit.exponent, r.fit.log_power, r.fit.r_squared};
    out->theoretical_exponent = r.theoretical.exponent;
    out->theoretical_log_power = r.theoretical.log_power;
    out->sharper_exponent = r.sharper_exponent;
    out->two_sided = r.two_sided ? 1 : 0;
    out->proxy = r.proxy ? 1 : 0;
    out->pass = r.pass ? 1 : 0;
    if (points)
      for (size_t i = 0; i < r.points.size() && i < count; ++i)
        points[i] = r.points[i];
  });
}
