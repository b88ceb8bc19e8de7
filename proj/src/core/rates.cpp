#include "core/rates.hpp"

#include <cmath>
#include <limits>

#include "core/cumulants.hpp"
#include "core/error.hpp"
#include "core/simulation.hpp"

namespace gqv {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kCritEps = 1e-12;

bool near(double a, double b) { return std::abs(a - b) < kCritEps; }

// Solve the k x k normal equations A x = b in place (k <= 3).
void solve_small(double a[3][3], double b[3], int k, double x[3]) {
  for (int c = 0; c < k; ++c) {
    int piv = c;
    for (int r = c + 1; r < k; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    for (int j = 0; j < k; ++j) std::swap(a[c][j], a[piv][j]);
    std::swap(b[c], b[piv]);
    if (a[c][c] == 0.0) fail(ErrorCode::Domain, "singular regression system");
    for (int r = c + 1; r < k; ++r) {
      const double f = a[r][c] / a[c][c];
      for (int j = c; j < k; ++j) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  for (int r = k - 1; r >= 0; --r) {
    double s = b[r];
    for (int j = r + 1; j < k; ++j) s -= a[r][j] * x[j];
    x[r] = s / a[r][r];
  }
}

}  // namespace

TheoreticalRate theoretical_exponent(double hurst) {
  if (!(hurst > 0.0)) fail(ErrorCode::InvalidArg, "hurst must be positive");
  if (hurst > 0.75 + kCritEps)
    fail(ErrorCode::Domain, "no rate regime above H = 3/4");
  TheoreticalRate t;
  if (near(hurst, 0.75)) {
    t = {Regime::Boundary34, 0.0, -1.5};
  } else if (near(hurst, 2.0 / 3.0)) {
    t = {Regime::Critical23, -0.5, 2.0};
  } else if (hurst < 2.0 / 3.0) {
    t = {Regime::OptimalSqrt, -0.5, 0.0};
  } else {
    t = {Regime::Upper34, 0.5 * (4.0 * hurst - 3.0), 0.0};
  }
  return t;
}

RateFit fit_power_law(const std::vector<double>& n, const std::vector<double>& y,
                      bool with_log) {
  const size_t m = n.size();
  if (m != y.size() || m < 4)
    fail(ErrorCode::InvalidArg, "fit needs >= 4 aligned points");
  for (size_t i = 0; i < m; ++i) {
    if (!(y[i] > 0.0)) fail(ErrorCode::Domain, "fit requires y > 0");
    if (i > 0 && !(n[i] > n[i - 1]))
      fail(ErrorCode::InvalidArg, "n must be strictly increasing");
    if (with_log && !(n[i] > 1.0))
      fail(ErrorCode::Domain, "log-corrected fit requires n > 1");
  }

  const int k = with_log ? 3 : 2;
  double a[3][3] = {{0}};
  double b[3] = {0};
  for (size_t i = 0; i < m; ++i) {
    const double ln = std::log(n[i]);
    const double row[3] = {1.0, ln, with_log ? std::log(ln) : 0.0};
    const double ly = std::log(y[i]);
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) a[r][c] += row[r] * row[c];
      b[r] += row[r] * ly;
    }
  }
  double x[3] = {0, 0, 0};
  solve_small(a, b, k, x);

  double mean = 0.0;
  for (size_t i = 0; i < m; ++i) mean += std::log(y[i]);
  mean /= static_cast<double>(m);
  double ss_res = 0.0, ss_tot = 0.0;
  for (size_t i = 0; i < m; ++i) {
    const double ln = std::log(n[i]);
    const double pred = x[0] + x[1] * ln + (with_log ? x[2] * std::log(ln) : 0.0);
    const double ly = std::log(y[i]);
    ss_res += (ly - pred) * (ly - pred);
    ss_tot += (ly - mean) * (ly - mean);
  }
  RateFit fit;
  fit.exponent = x[1];
  fit.log_power = with_log ? x[2] : 0.0;
  fit.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
  return fit;
}

RegimeReport regime_check(const CovarianceModel& model,
                          const std::vector<std::int64_t>& n_list, RateUse use,
                          bool with_log, std::int64_t reps, std::uint64_t seed,
                          int threads, std::int64_t size_cap) {
  if (n_list.size() < 4)
    fail(ErrorCode::InvalidArg, "regime check needs >= 4 sizes");
  const double h = model.hurst();

  RegimeReport rep;
  rep.theoretical = theoretical_exponent(h);
  rep.proxy = (use == RateUse::Ks);

  std::vector<double> ns;
  ns.reserve(n_list.size());
  for (std::int64_t n : n_list) ns.push_back(static_cast<double>(n));

  for (std::int64_t n : n_list) {
    double y;
    if (use == RateUse::Ks) {
      if (reps < 1) fail(ErrorCode::InvalidArg, "ks fit requires reps >= 1");
      const IncrementCovariance inc = increment_covariance(model, n, size_cap);
      const CholeskyFactor f = cholesky_factor(inc);
      const double sigma = std::sqrt(sigma_n_sq(inc));
      y = sample_vn(f, sigma, reps, seed, threads).ks_distance;
    } else {
      const CumulantReport c = cumulant_report(model, n, size_cap);
      y = use == RateUse::Kappa3   ? std::abs(c.kappa3_v)
          : use == RateUse::Kappa4 ? c.kappa4_v
                                   : c.m_stat;
    }
    rep.points.push_back(y);
  }
  rep.fit = fit_power_law(ns, rep.points, with_log);

  // rho-sum regime predictions for the exact-cumulant statistics
  const bool critical =
      near(h, 2.0 / 3.0) || near(h, 0.75) || (use == RateUse::Kappa4 && near(h, 0.625));
  rep.sharper_exponent = kNan;
  if (!critical) {
    switch (use) {
      case RateUse::Kappa3:
      case RateUse::MStat:
        rep.sharper_exponent = h < 2.0 / 3.0 ? -0.5 : 6.0 * h - 4.5;
        break;
      case RateUse::Kappa4:
        rep.sharper_exponent = h < 0.625 ? -1.0 : 8.0 * h - 6.0;
        break;
      case RateUse::Ks:
        break;
    }
  }

  // the distance equivalence gives a two-sided assertion for M only
  rep.two_sided = (use == RateUse::MStat) && h < 2.0 / 3.0 + kCritEps;

  const double tol = rep.proxy ? 0.15 : 0.05;
  const double a = rep.fit.exponent;
  bool ok = rep.two_sided ? std::abs(a - rep.theoretical.exponent) <= tol
                          : a <= rep.theoretical.exponent + tol;
  if (std::isfinite(rep.sharper_exponent))
    ok = ok && std::abs(a - rep.sharper_exponent) <= 0.10;
  rep.pass = ok;
  return rep;
}

}  // namespace gqv
