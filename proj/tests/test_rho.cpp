#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "core/error.hpp"
#include "core/matrix.hpp"
#include "core/rho.hpp"

using namespace gqv;

namespace {

// frozen 60-digit reference values for lags past the naive formula's
// cancellation point (the naive formula itself loses ~2 log10(r) digits)
struct RhoRef {
  double h;
  std::int64_t lag;
  double value;
};
constexpr RhoRef kRhoRefs[] = {
    {0.1, 65, -4.3640440091051248e-5},
    {0.1, 100, -2.0095935497236070e-5},
    {0.1, 1000, -3.1848587020688847e-7},
    {0.1, 1000000, -1.2679145539694236e-12},
    {0.1, 100000000, -3.1848573644279789e-16},
    {0.3, 65, -0.00034764127241932510},
    {0.3, 100, -0.00019019250860202869},
    {0.3, 1000, -7.5714902537800526e-6},
    {0.3, 1000000, -4.7772860466433033e-10},
    {0.3, 100000000, -7.5714881337623162e-13},
    {0.6, 65, 0.0042546407620612344},
    {0.6, 100, 0.0030142998902590429},
    {0.6, 1000, 0.00047772866199164932},
    {0.6, 1000000, 1.9018718309535627e-6},
    {0.6, 100000000, 4.7772860466419619e-8},
    {0.7, 65, 0.022878009774828013},
    {0.7, 100, 0.017666946984300400},
    {0.7, 1000, 0.0044377012939072996},
    {0.7, 1000000, 7.0332820082273763e-5},
    {0.7, 100000000, 4.4377009388911093e-6},
    {0.75, 65, 0.046513713580964491},
    {0.75, 100, 0.037500234381836240},
    {0.75, 1000, 0.011858541966790465},
    {0.75, 1000000, 0.00037500000000002344},
    {0.75, 100000000, 3.7500000000000000e-5},
    {0.9, 65, 0.31242939011405828},
    {0.9, 100, 0.28663773608629706},
    {0.9, 1000, 0.18085582668580715},
    {0.9, 1000000, 0.045428928802574854},
    {0.9, 100000000, 0.018085582306868993},
};

Matrix toeplitz(double h, std::int64_t n) {
  Matrix t(n);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j) t.at(i, j) = rho(h, i - j);
  return t;
}

}  // namespace

TEST_CASE("rho closed-form values") {
  CHECK(rho(0.5, 0) == 1.0);
  CHECK(rho(0.5, 1) == 0.0);
  CHECK(rho(0.5, 17) == 0.0);
  CHECK(rho(0.75, 1) == doctest::Approx(0.5 * (std::pow(2.0, 1.5) - 2.0)).epsilon(1e-15));
  CHECK(rho(0.3, -5) == rho(0.3, 5));
}

TEST_CASE("series evaluation agrees with the frozen references") {
  for (const auto& ref : kRhoRefs)
    CHECK(rho(ref.h, ref.lag) == doctest::Approx(ref.value).epsilon(1e-13));
  // continuity across the naive/series switch at lag 64
  for (double h : {0.1, 0.3, 0.6, 0.7, 0.75, 0.9}) {
    const double a = rho(h, 64), b = rho(h, 65);
    CHECK(std::abs(b - a) < std::abs(a) * 0.2 + 1e-12);
  }
}

TEST_CASE("rho matches its power-law asymptote") {
  for (double h : {0.3, 0.6, 0.7}) {
    const double r = 1e6;
    const double asym = h * (2.0 * h - 1.0) * std::pow(r, 2.0 * h - 2.0);
    CHECK(rho(h, static_cast<std::int64_t>(r)) == doctest::Approx(asym).epsilon(1e-5));
  }
}

TEST_CASE("sigma_sq_series values and domain") {
  const SeriesSum s = sigma_sq_series(0.5, 1000);
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s.tail_bound >= 0.0);
  CHECK(s.tail_bound < 1e-6);
  CHECK_THROWS_AS((void)sigma_sq_series(0.75, 100), Error);
  CHECK_THROWS_AS((void)sigma_sq_series(0.8, 100), Error);
}

TEST_CASE("lag-weighted square sum equals the brute-force double loop") {
  for (double h : {0.3, 0.6, 0.7, 0.75}) {
    const std::int64_t n = 200;
    long double brute = 0.0L;
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = 0; j < n; ++j)
        brute += static_cast<long double>(rho(h, i - j)) * rho(h, i - j);
    CHECK(rho_sq_lag_sum(h, n) ==
          doctest::Approx(static_cast<double>(brute)).epsilon(1e-12));
  }
}

TEST_CASE("triple sum equals the brute-force cube") {
  for (double h : {0.3, 0.6, 0.7}) {
    const std::int64_t n = 40;
    long double brute = 0.0L;
    for (std::int64_t j = 0; j < n; ++j)
      for (std::int64_t k = 0; k < n; ++k)
        for (std::int64_t l = 0; l < n; ++l)
          brute += static_cast<long double>(rho(h, j - k)) * rho(h, k - l) *
                   rho(h, j - l);
    CHECK(rho_triple_sum(h, n) ==
          doctest::Approx(static_cast<double>(brute)).epsilon(1e-12));
  }
}

TEST_CASE("quad sum equals the dense Frobenius norm of T^2") {
  for (double h : {0.3, 0.6, 0.7}) {
    const std::int64_t n = 48;
    const Matrix t = toeplitz(h, n);
    const Matrix t2 = mat_mul(t, t);
    CHECK(rho_quad_sum(h, n) == doctest::Approx(frobenius_sq(t2)).epsilon(1e-12));
  }
}

TEST_CASE("toeplitz chain sums match the dense reductions") {
  for (double h : {0.3, 0.55, 0.7}) {
    const std::int64_t n = 64;
    const Matrix t = toeplitz(h, n);
    const Matrix t2 = mat_mul(t, t);
    const ToeplitzChainSums s = toeplitz_chain_sums(h, n);
    CHECK(s.sum_theta2 == doctest::Approx(frobenius_sq(t)).epsilon(1e-12));
    CHECK(s.sum_ttt == doctest::Approx(hadamard_sum(t2, t)).epsilon(1e-12));
    CHECK(s.sum_tttt == doctest::Approx(frobenius_sq(t2)).epsilon(1e-12));
  }
}

TEST_CASE("invalid arguments are rejected") {
  CHECK_THROWS_AS((void)rho_table(0.5, -1), Error);
  CHECK_THROWS_AS((void)rho_triple_sum(0.5, 0), Error);
  CHECK_THROWS_AS((void)rho(1.5, 1), Error);
}
