#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "core/error.hpp"
#include "core/rates.hpp"
#include "core/rho.hpp"

using namespace gqv;

TEST_CASE("regime table") {
  const TheoreticalRate a = theoretical_exponent(0.5);
  CHECK(a.regime == Regime::OptimalSqrt);
  CHECK(a.exponent == -0.5);
  CHECK(a.log_power == 0.0);

  const TheoreticalRate b = theoretical_exponent(2.0 / 3.0);
  CHECK(b.regime == Regime::Critical23);
  CHECK(b.exponent == -0.5);
  CHECK(b.log_power == 2.0);

  const TheoreticalRate c = theoretical_exponent(0.7);
  CHECK(c.regime == Regime::Upper34);
  CHECK(c.exponent == doctest::Approx(-0.1).epsilon(1e-12));

  const TheoreticalRate d = theoretical_exponent(0.75);
  CHECK(d.regime == Regime::Boundary34);
  CHECK(d.exponent == 0.0);
  CHECK(d.log_power == -1.5);

  CHECK_THROWS_AS((void)theoretical_exponent(0.8), Error);
  CHECK_THROWS_AS((void)theoretical_exponent(0.0), Error);
}

TEST_CASE("power-law fit recovers planted exponents exactly") {
  std::vector<double> n, y;
  for (int k = 5; k <= 12; ++k) {
    n.push_back(std::pow(2.0, k));
    y.push_back(std::pow(n.back(), -0.5));
  }
  const RateFit f = fit_power_law(n, y, false);
  CHECK(f.exponent == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("log-corrected fit recovers both exponents") {
  std::vector<double> n, y;
  for (int k = 5; k <= 14; ++k) {
    const double nn = std::pow(2.0, k);
    n.push_back(nn);
    y.push_back(std::pow(nn, -0.5) * std::pow(std::log(nn), 2.0));
  }
  const RateFit f = fit_power_law(n, y, true);
  CHECK(f.exponent == doctest::Approx(-0.5).epsilon(1e-6));
  CHECK(f.log_power == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("constant sequences fit exponent zero") {
  const std::vector<double> n = {16, 32, 64, 128};
  const std::vector<double> y = {3.0, 3.0, 3.0, 3.0};
  const RateFit f = fit_power_law(n, y, false);
  CHECK(f.exponent == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(f.r_squared == 1.0);  // zero total variance convention
}

TEST_CASE("fit input validation") {
  CHECK_THROWS_AS((void)fit_power_law({1, 2, 4}, {1, 1, 1}, false), Error);
  CHECK_THROWS_AS((void)fit_power_law({1, 2, 4, 8}, {1, -1, 1, 1}, false), Error);
  CHECK_THROWS_AS((void)fit_power_law({1, 2, 2, 8}, {1, 1, 1, 1}, false), Error);
  CHECK_THROWS_AS((void)fit_power_law({1, 2, 4, 8}, {1, 1, 1, 1}, true), Error);
}

TEST_CASE("m-statistic regime at H = 0.55 fits the optimal rate") {
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 128; n <= 8192; n *= 2) ns.push_back(n);
  const RegimeReport rep =
      regime_check(CovarianceModel::fbm(0.55), ns, RateUse::MStat, false, 0, 0);
  CHECK(rep.pass);
  CHECK(rep.two_sided);
  CHECK(rep.fit.exponent == doctest::Approx(-0.5).epsilon(0.1));
}

TEST_CASE("kappa4 regime at H = 0.6 fits n^{-1}") {
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 128; n <= 8192; n *= 2) ns.push_back(n);
  const RegimeReport rep =
      regime_check(CovarianceModel::fbm(0.6), ns, RateUse::Kappa4, false, 0, 0);
  CHECK(rep.pass);
  CHECK(rep.sharper_exponent == -1.0);
  CHECK(std::abs(rep.fit.exponent + 1.0) <= 0.1);
}

TEST_CASE("kappa3 regime at H = 0.7 fits the sharper prediction") {
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 128; n <= 8192; n *= 2) ns.push_back(n);
  const RegimeReport rep =
      regime_check(CovarianceModel::fbm(0.7), ns, RateUse::Kappa3, false, 0, 0);
  CHECK(rep.pass);
  CHECK(!rep.two_sided);
  CHECK(rep.fit.exponent <= -0.1 + 0.05);
  CHECK(rep.fit.exponent == doctest::Approx(6.0 * 0.7 - 4.5).epsilon(0.34));
}

TEST_CASE("triple-sum growth matches the rho-sum regimes") {
  for (auto [h, expo] : {std::pair<double, double>{0.55, 1.0}, {0.7, 6.0 * 0.7 - 3.0}}) {
    std::vector<double> n, y;
    for (std::int64_t m = 1024; m <= 16384; m *= 2) {
      n.push_back(static_cast<double>(m));
      y.push_back(std::abs(rho_triple_sum(h, m)));
    }
    const RateFit f = fit_power_law(n, y, false);
    CHECK(f.exponent == doctest::Approx(expo).epsilon(0.1));
  }
}

TEST_CASE("ks-based fits are marked as proxies") {
  std::vector<std::int64_t> ns = {16, 32, 64, 128};
  const RegimeReport rep = regime_check(CovarianceModel::fbm(0.55), ns,
                                        RateUse::Ks, false, 4000, 13);
  CHECK(rep.proxy);
  CHECK(!std::isfinite(rep.sharper_exponent));
}
