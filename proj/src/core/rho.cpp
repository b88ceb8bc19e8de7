#include "core/rho.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "core/error.hpp"
#include "core/kahan.hpp"

namespace gqv {
namespace {

void require_hurst(double h) {
  if (!(h > 0.0 && h < 1.0)) fail(ErrorCode::InvalidArg, "hurst must be in (0,1)");
}

// rho(r) for r > 64 via the binomial series of
//   (1+x)^{2H} + (1-x)^{2H} - 2 = 2 sum_{k>=1} C(2H, 2k) x^{2k},  x = 1/r,
// whose odd orders cancel exactly; the factor 2 cancels the 1/2 of rho,
// so rho(r) = r^{2H} sum_{k>=1} C(2H, 2k) x^{2k}.
double rho_series(double h, double r) {
  const double a = 2.0 * h;
  const double x2 = 1.0 / (r * r);
  double binom = a * (a - 1.0) / 2.0;  // C(2H, 2)
  double xpow = x2;
  double sum = 0.0;
  for (int m = 2; m < 80; m += 2) {
    const double term = binom * xpow;
    sum += term;
    if (std::abs(term) < 1e-20 * std::abs(sum)) break;
    // advance C(2H, m) -> C(2H, m+2)
    binom *= (a - m) / (m + 1) * ((a - m - 1.0) / (m + 2));
    xpow *= x2;
  }
  return std::pow(r, a) * sum;
}

}  // namespace

double rho(double hurst, std::int64_t lag) {
  require_hurst(hurst);
  const double r = static_cast<double>(lag < 0 ? -lag : lag);
  if (lag == 0) return 1.0;
  if (r <= 64.0) {
    const double a = 2.0 * hurst;
    return 0.5 * (std::pow(r + 1.0, a) + std::pow(r - 1.0, a) -
                  2.0 * std::pow(r, a));
  }
  return rho_series(hurst, r);
}

std::vector<double> rho_table(double hurst, std::int64_t count) {
  if (count < 0) fail(ErrorCode::InvalidArg, "count must be non-negative");
  std::vector<double> t(static_cast<size_t>(count));
  for (std::int64_t r = 0; r < count; ++r) t[static_cast<size_t>(r)] = rho(hurst, r);
  return t;
}

SeriesSum sigma_sq_series(double hurst, std::int64_t r_max) {
  require_hurst(hurst);
  if (hurst >= 0.75)
    fail(ErrorCode::Domain, "sum of rho^2 diverges for H >= 3/4");
  if (r_max < 1) fail(ErrorCode::InvalidArg, "r_max must be positive");
  KahanSum acc;
  acc.add(1.0);  // r = 0
  for (std::int64_t r = 1; r <= r_max; ++r) {
    const double v = rho(hurst, r);
    acc.add(2.0 * v * v);
  }
  // rho(r) ~ H(2H-1) r^{2H-2}; bound the tail by the integral of
  // (1.1 c)^2 x^{4H-4} from r_max, which dominates the sum for large r_max.
  const double c = 1.1 * hurst * std::abs(2.0 * hurst - 1.0);
  const double tail =
      2.0 * 2.0 * c * c * std::pow(static_cast<double>(r_max), 4.0 * hurst - 3.0) /
      (3.0 - 4.0 * hurst);
  return {2.0 * acc.value(), tail};
}

double rho_sq_lag_sum(double hurst, std::int64_t n) {
  if (n < 1) fail(ErrorCode::InvalidArg, "n must be positive");
  KahanSum acc;
  acc.add(static_cast<double>(n));  // d = 0, rho(0)^2 = 1
  for (std::int64_t d = 1; d < n; ++d) {
    const double v = rho(hurst, d);
    acc.add(2.0 * static_cast<double>(n - d) * v * v);
  }
  return acc.value();
}

double rho_triple_sum(double hurst, std::int64_t n) {
  if (n < 1) fail(ErrorCode::InvalidArg, "n must be positive");
  const std::vector<double> r = rho_table(hurst, 2 * n - 1);
  auto rho_at = [&r](std::int64_t lag) {
    return r[static_cast<size_t>(lag < 0 ? -lag : lag)];
  };
  long double acc = 0.0L;
  // lags a = j-k, b = k-l; the free index k ranges over an interval.
  for (std::int64_t a = -(n - 1); a <= n - 1; ++a) {
    const double ra = rho_at(a);
    for (std::int64_t b = -(n - 1); b <= n - 1; ++b) {
      const std::int64_t lo = std::max<std::int64_t>({0, -a, b});
      const std::int64_t hi = std::min<std::int64_t>({n - 1, n - 1 - a, n - 1 + b});
      if (hi < lo) continue;
      acc += static_cast<long double>(ra * rho_at(b) * rho_at(a + b)) *
             static_cast<long double>(hi - lo + 1);
    }
  }
  return static_cast<double>(acc);
}

ToeplitzChainSums toeplitz_chain_sums(double hurst, std::int64_t n) {
  if (n < 1) fail(ErrorCode::InvalidArg, "n must be positive");
  const std::vector<double> r = rho_table(hurst, n);
  long double s3 = 0.0L, s4 = 0.0L;
  // Sweep the diagonals of C = T^2. Along diagonal d,
  //   C[j+1][k+1] = C[j][k] + rho(j+1) rho(k+1) - rho(n-1-j) rho(n-1-k).
  for (std::int64_t d = 0; d < n; ++d) {
    long double c = 0.0L;
    for (std::int64_t m = 0; m < n; ++m) {
      const std::int64_t lag = d - m < 0 ? m - d : d - m;
      c += static_cast<long double>(r[static_cast<size_t>(lag)]) *
           r[static_cast<size_t>(m)];
    }
    const long double w = (d == 0) ? 1.0L : 2.0L;
    long double diag_sum = 0.0L, diag_sq = 0.0L;
    for (std::int64_t j = d; j < n; ++j) {
      const std::int64_t k = j - d;
      diag_sum += c;
      diag_sq += c * c;
      if (j + 1 < n) {
        c += static_cast<long double>(r[static_cast<size_t>(j + 1)]) *
                 r[static_cast<size_t>(k + 1)] -
             static_cast<long double>(r[static_cast<size_t>(n - 1 - j)]) *
                 r[static_cast<size_t>(n - 1 - k)];
      }
    }
    s3 += w * static_cast<long double>(r[static_cast<size_t>(d)]) * diag_sum;
    s4 += w * diag_sq;
  }
  ToeplitzChainSums out;
  out.sum_theta2 = rho_sq_lag_sum(hurst, n);
  out.sum_ttt = static_cast<double>(s3);
  out.sum_tttt = static_cast<double>(s4);
  return out;
}

double rho_quad_sum(double hurst, std::int64_t n) {
  return toeplitz_chain_sums(hurst, n).sum_tttt;
}

}  // namespace gqv
