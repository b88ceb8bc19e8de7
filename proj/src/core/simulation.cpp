#include "core/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "core/error.hpp"
#include "core/kahan.hpp"
#include "core/rho.hpp"

namespace gqv {
namespace {

constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed ^ mix64(stream * kWeyl + 0x6A09E667F3BCC909ull))) {}

std::uint64_t CounterRng::next_u64() { return mix64(key_ + (++counter_) * kWeyl); }

double CounterRng::next_unit() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
}

double CounterRng::next_normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = next_unit();
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = kTwoPi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.70710678118654752440); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) fail(ErrorCode::Domain, "quantile requires p in (0,1)");
  // bisection on the cdf; plenty fast for test-scale use
  double lo = -10.0, hi = 10.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (normal_cdf(mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

bool try_cholesky(const Matrix& theta, double jitter, Matrix* out) {
  const std::int64_t n = theta.n();
  Matrix l(n);
  for (std::int64_t j = 0; j < n; ++j) {
    long double d = theta.at(j, j) + jitter;
    for (std::int64_t k = 0; k < j; ++k)
      d -= static_cast<long double>(l.at(j, k)) * l.at(j, k);
    if (!(d > 0.0L)) return false;
    const double dj = std::sqrt(static_cast<double>(d));
    l.at(j, j) = dj;
    for (std::int64_t i = j + 1; i < n; ++i) {
      long double v = theta.at(i, j) + (i == j ? jitter : 0.0);
      const double* li = l.row(i);
      const double* lj = l.row(j);
      for (std::int64_t k = 0; k < j; ++k) v -= static_cast<long double>(li[k]) * lj[k];
      l.at(i, j) = static_cast<double>(v) / dj;
    }
  }
  *out = std::move(l);
  return true;
}

}  // namespace

CholeskyFactor cholesky_factor(const Matrix& theta) {
  CholeskyFactor f;
  f.n = theta.n();
  for (std::int64_t i = 0; i < theta.n(); ++i) f.trace += theta.at(i, i);
  static const double kJitters[] = {0.0, 1e-12, 1e-11, 1e-10, 1e-9};
  for (double j : kJitters) {
    if (try_cholesky(theta, j, &f.l)) {
      f.jitter = j;
      return f;
    }
  }
  fail(ErrorCode::NotPsd, "covariance indefinite beyond the jitter budget");
}

CholeskyFactor cholesky_factor(const IncrementCovariance& inc) {
  return cholesky_factor(inc.theta);
}

McRun sample_vn(const CholeskyFactor& factor, double sigma_n, std::int64_t reps,
                std::uint64_t seed, int threads) {
  if (reps < 1) fail(ErrorCode::InvalidArg, "reps must be positive");
  if (!(sigma_n > 0.0)) fail(ErrorCode::InvalidArg, "sigma_n must be positive");
  const std::int64_t n = factor.n;
  McRun run;
  run.n = n;
  run.reps = reps;
  run.seed = seed;
  run.samples.resize(static_cast<size_t>(reps));

  if (threads <= 0)
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const std::int64_t block = 32;

  auto worker = [&](std::int64_t r_begin, std::int64_t r_end) {
    std::vector<double> z(static_cast<size_t>(block) * n);
    std::vector<double> acc(static_cast<size_t>(block));
    for (std::int64_t b0 = r_begin; b0 < r_end; b0 += block) {
      const std::int64_t bsz = std::min(block, r_end - b0);
      for (std::int64_t b = 0; b < bsz; ++b) {
        CounterRng rng(seed, static_cast<std::uint64_t>(b0 + b));
        double* zb = z.data() + static_cast<size_t>(b) * n;
        for (std::int64_t k = 0; k < n; ++k) zb[k] = rng.next_normal();
        acc[static_cast<size_t>(b)] = 0.0;
      }
      // x = L z, accumulating sum of squares row by row; L rows are
      // reused across the whole replica block.
      for (std::int64_t i = 0; i < n; ++i) {
        const double* li = factor.l.row(i);
        for (std::int64_t b = 0; b < bsz; ++b) {
          const double* zb = z.data() + static_cast<size_t>(b) * n;
          double x = 0.0;
          for (std::int64_t k = 0; k <= i; ++k) x += li[k] * zb[k];
          acc[static_cast<size_t>(b)] += x * x;
        }
      }
      for (std::int64_t b = 0; b < bsz; ++b)
        run.samples[static_cast<size_t>(b0 + b)] =
            (acc[static_cast<size_t>(b)] - factor.trace) / sigma_n;
    }
  };

  if (threads <= 1 || reps < 2 * block) {
    worker(0, reps);
  } else {
    // chunk boundaries aligned to blocks so each replica is produced once
    std::vector<std::thread> pool;
    const std::int64_t nblocks = (reps + block - 1) / block;
    const std::int64_t per = (nblocks + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const std::int64_t lo = std::min<std::int64_t>(reps, t * per * block);
      const std::int64_t hi = std::min<std::int64_t>(reps, (t + 1) * per * block);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  KahanSum mean;
  for (double v : run.samples) mean.add(v);
  run.empirical_mean = mean.value() / static_cast<double>(reps);
  KahanSum var;
  for (double v : run.samples) {
    const double d = v - run.empirical_mean;
    var.add(d * d);
  }
  run.empirical_var = var.value() / static_cast<double>(reps);
  run.ks_distance = ks_distance(run.samples);
  return run;
}

double ks_distance(std::vector<double> samples) {
  if (samples.empty()) fail(ErrorCode::InvalidArg, "samples must be non-empty");
  std::sort(samples.begin(), samples.end());
  const double m = static_cast<double>(samples.size());
  double d = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    const double c = normal_cdf(samples[i]);
    d = std::max(d, std::max(c - static_cast<double>(i) / m,
                             static_cast<double>(i + 1) / m - c));
  }
  return d;
}

double test_fn_value(TestFn fn, double x) {
  switch (fn) {
    case TestFn::One: return 1.0;
    case TestFn::IndicatorLeq0: return x <= 0.0 ? 1.0 : 0.0;
    case TestFn::Square: return x * x;
  }
  fail(ErrorCode::Internal, "unreachable");
}

double test_fn_target(TestFn fn) {
  switch (fn) {
    case TestFn::One: return 1.0;
    case TestFn::IndicatorLeq0: return 0.5;
    case TestFn::Square: return 1.0;
  }
  fail(ErrorCode::Internal, "unreachable");
}

std::vector<double> stationary_path(const std::vector<double>& rho_row,
                                    const std::vector<double>& innovations) {
  const std::int64_t n = static_cast<std::int64_t>(innovations.size());
  if (static_cast<std::int64_t>(rho_row.size()) < n)
    fail(ErrorCode::InvalidArg, "rho_row shorter than the path");
  std::vector<double> x(static_cast<size_t>(n));
  if (n == 0) return x;
  x[0] = std::sqrt(rho_row[0]) * innovations[0];
  std::vector<double> phi, prev;
  double v = rho_row[0];
  // Levinson recursion on the prediction coefficients; the resulting
  // conditional draw coincides with L z for the Toeplitz Cholesky L.
  for (std::int64_t k = 1; k < n; ++k) {
    double num = rho_row[static_cast<size_t>(k)];
    for (std::int64_t j = 0; j + 1 < k; ++j)
      num -= phi[static_cast<size_t>(j)] * rho_row[static_cast<size_t>(k - 1 - j)];
    const double a = num / v;
    prev = phi;
    phi.resize(static_cast<size_t>(k));
    phi[static_cast<size_t>(k - 1)] = a;
    for (std::int64_t j = 0; j + 1 < k; ++j)
      phi[static_cast<size_t>(j)] =
          prev[static_cast<size_t>(j)] - a * prev[static_cast<size_t>(k - 2 - j)];
    v *= (1.0 - a * a);
    if (!(v > 0.0)) fail(ErrorCode::NotPsd, "stationary covariance not PD");
    double mean = 0.0;
    for (std::int64_t j = 0; j < k; ++j)
      mean += phi[static_cast<size_t>(j)] * x[static_cast<size_t>(k - 1 - j)];
    x[static_cast<size_t>(k)] = mean + std::sqrt(v) * innovations[static_cast<size_t>(k)];
  }
  return x;
}

AscltResult asclt_average(const CovarianceModel& model, std::int64_t n,
                          TestFn phi, std::uint64_t seed,
                          std::int64_t size_cap) {
  if (n < 2) fail(ErrorCode::InvalidArg, "asclt requires n >= 2");
  std::vector<double> x;       // one path of unit increments
  std::vector<double> diag;    // theta(k,k)
  std::vector<double> sigma;   // sigma_k for k = 1..n (index k-1)
  sigma.resize(static_cast<size_t>(n));
  diag.assign(static_cast<size_t>(n), 0.0);

  CounterRng rng(seed, 0);
  std::vector<double> z(static_cast<size_t>(n));
  for (auto& zi : z) zi = rng.next_normal();

  if (model.kind() == ModelKind::Fbm) {
    const std::vector<double> r = rho_table(model.hurst(), n);
    x = stationary_path(r, z);
    for (auto& d : diag) d = 1.0;
    // sigma_k^2 = sigma_{k-1}^2 + 2 + 4 sum_{0<d<k} rho(d)^2
    double qq = 0.0, ss = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) {
      ss += 2.0 + 4.0 * qq;
      sigma[static_cast<size_t>(k - 1)] = std::sqrt(ss);
      if (k < n) {
        const double rk = r[static_cast<size_t>(k)];
        qq += rk * rk;
      }
    }
  } else {
    const IncrementCovariance inc = increment_covariance(model, n, size_cap);
    const CholeskyFactor f = cholesky_factor(inc);
    x.resize(static_cast<size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
      const double* li = f.l.row(i);
      double xi = 0.0;
      for (std::int64_t k = 0; k <= i; ++k) xi += li[k] * z[static_cast<size_t>(k)];
      x[static_cast<size_t>(i)] = xi;
      diag[static_cast<size_t>(i)] = inc.theta.at(i, i);
    }
    // sigma_k^2 = sigma_{k-1}^2 + 2 theta(k-1,k-1)^2 + 4 sum_{i<k-1} theta(i,k-1)^2
    double s2 = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) {
      double col = 0.0;
      for (std::int64_t i = 0; i + 1 < k; ++i) {
        const double t = inc.theta.at(i, k - 1);
        col += t * t;
      }
      const double d = inc.theta.at(k - 1, k - 1);
      s2 += 2.0 * d * d + 4.0 * col;
      sigma[static_cast<size_t>(k - 1)] = std::sqrt(s2);
    }
  }

  KahanSum acc;
  double running = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    const double xi = x[static_cast<size_t>(k - 1)];
    running += xi * xi - diag[static_cast<size_t>(k - 1)];
    const double vk = running / sigma[static_cast<size_t>(k - 1)];
    acc.add(test_fn_value(phi, vk) / static_cast<double>(k));
  }
  AscltResult res;
  res.n = n;
  res.phi = phi;
  res.log_average = acc.value() / std::log(static_cast<double>(n));
  res.target = test_fn_target(phi);
  return res;
}

}  // namespace gqv
