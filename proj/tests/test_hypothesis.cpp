#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "core/covariance.hpp"
#include "core/error.hpp"
#include "core/hypothesis.hpp"

using namespace gqv;

TEST_CASE("subfbm psi estimates match the closed form") {
  const double h = 0.6;
  const CovarianceModel m = CovarianceModel::subfbm(h);
  const PsiScanReport rep = psi_scan(m, 1.0, default_psi_grid());
  int checked = 0;
  for (const auto& p : rep.points) {
    if (p.rejected) continue;
    const double closed =
        -h * (2.0 * h - 1.0) * std::pow(p.t + p.s, 2.0 * h - 2.0);
    CHECK(p.psi == doctest::Approx(closed).epsilon(1e-4));
    ++checked;
  }
  CHECK(checked > 50);
  CHECK(rep.fitted_constant > 0.0);
  CHECK(std::isfinite(rep.fitted_constant));
}

TEST_CASE("psi scan passes against its own fitted constant") {
  for (const auto& m : {CovarianceModel::subfbm(0.3),
                        CovarianceModel::bifbm(0.8, 0.75),
                        CovarianceModel::gen_subfbm(0.45, 1.5)}) {
    const PsiScanReport fit = psi_scan(m, 1.0, default_psi_grid());
    const PsiScanReport rep =
        psi_scan(m, fit.fitted_constant * 1.0001, default_psi_grid());
    CHECK(rep.pass);
    CHECK(rep.max_ratio <= 1.0);
  }
}

TEST_CASE("psi scan rejects diagonal-band points") {
  const CovarianceModel m = CovarianceModel::subfbm(0.6);
  const std::vector<std::pair<double, double>> grid = {
      {1.0, 1.0}, {1.0, 1.0 + 1e-5}, {0.5e-4, 1.0}, {1.0, 2.0}};
  const PsiScanReport rep = psi_scan(m, 1.0, grid);
  REQUIRE(rep.points.size() == 4);
  CHECK(rep.points[0].rejected);
  CHECK(rep.points[1].rejected);
  CHECK(rep.points[2].rejected);
  CHECK(!rep.points[3].rejected);
  CHECK_THROWS_AS((void)psi_scan(m, 0.0, grid), Error);
}

TEST_CASE("gamma bound holds with the fitted constant") {
  for (const auto& m : {CovarianceModel::subfbm(0.3), CovarianceModel::subfbm(0.7),
                        CovarianceModel::bifbm(0.8, 0.75),
                        CovarianceModel::gen_subfbm(0.45, 1.5)}) {
    const PsiScanReport fit = psi_scan(m, 1.0, default_psi_grid());
    const IncrementCovariance inc = increment_covariance(m, 128);
    const GammaBoundReport rep = gamma_bound_check(inc, fit.fitted_constant * 1.05);
    CHECK(rep.pass);
    CHECK(rep.max_ratio <= 1.0 + 1e-9);
  }
}

TEST_CASE("gamma bound fails with a constant that is too small") {
  const CovarianceModel m = CovarianceModel::subfbm(0.6);
  const IncrementCovariance inc = increment_covariance(m, 64);
  const GammaBoundReport rep = gamma_bound_check(inc, 1e-6);
  CHECK(!rep.pass);
  CHECK(rep.max_ratio > 1.0);
}

TEST_CASE("increment tail bounds") {
  for (double h : {0.3, 0.6, 0.7}) {
    const TailBoundReport rep = increment_tail_bound_check(h, 4096);
    CHECK(rep.increment_bound_ok);
    CHECK(rep.ratios_bounded);
    CHECK(rep.pass);
    CHECK(std::isfinite(rep.max_ratio));
  }
  const TailBoundReport half = increment_tail_bound_check(0.5, 4096);
  CHECK(half.informational);
  CHECK(half.pass);  // envelope is logarithmic at H = 1/2: reported only
  CHECK_THROWS_AS((void)increment_tail_bound_check(0.6, 1), Error);
}

TEST_CASE("step measure carries interior jumps and boundary atoms") {
  const std::vector<StepPiece> f = {{1.0, 0.0, 1.0}};
  const StepMeasure nu = step_measure(f, -1.0, 2.0);
  REQUIRE(nu.atoms.size() == 2);
  CHECK(nu.atoms[0].first == 0.0);
  CHECK(nu.atoms[0].second == 1.0);
  CHECK(nu.atoms[1].first == 1.0);
  CHECK(nu.atoms[1].second == -1.0);

  // a piece reaching the right endpoint leaves the -f(b-) atom at b
  const StepMeasure nu2 = step_measure({{2.0, 0.5, 2.0}}, 0.0, 2.0);
  REQUIRE(nu2.atoms.size() == 2);
  CHECK(nu2.atoms[1].first == 2.0);
  CHECK(nu2.atoms[1].second == -2.0);
}

TEST_CASE("integration by parts on step functions") {
  // indicator against x^2: -int_0^1 2x dx = -1 = phi(0) - phi(1)
  const StieltjesCheck a = stieltjes_identity_check(
      {{1.0, 0.0, 1.0}}, [](double x) { return x * x; },
      [](double x) { return 2.0 * x; }, -1.0, 2.0);
  CHECK(a.rhs == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(a.residual <= 1e-8);

  // overlapping pieces against sin
  const StieltjesCheck b = stieltjes_identity_check(
      {{1.0, 0.0, 2.0}, {-0.5, 1.0, 3.0}, {2.0, 2.5, 3.5}},
      [](double x) { return std::sin(x); }, [](double x) { return std::cos(x); },
      -0.5, 4.0);
  CHECK(b.residual <= 1e-8);

  // piece flush against the domain boundary
  const StieltjesCheck c = stieltjes_identity_check(
      {{3.0, 0.0, 1.0}}, [](double x) { return std::exp(x); },
      [](double x) { return std::exp(x); }, 0.0, 1.0);
  CHECK(c.residual <= 1e-8);

  CHECK_THROWS_AS((void)stieltjes_identity_check({{1.0, -2.0, 1.0}},
                                                 [](double) { return 0.0; },
                                                 [](double) { return 0.0; },
                                                 0.0, 1.0),
                  Error);
}

TEST_CASE("simplex sums stay below the power envelope") {
  const std::vector<std::int64_t> rs = {100, 1000, 10000};
  for (const auto& v : {std::vector<double>{0.4, 0.4},
                        std::vector<double>{0.2, 0.2, 0.2}}) {
    const SimplexSumReport rep = simplex_sum_check(v, rs);
    REQUIRE(rep.ratios.size() == rs.size());
    for (double r : rep.ratios) CHECK(std::isfinite(r));
    CHECK(rep.bounded);
    CHECK(rep.pass);
  }
  // l = 1 sanity: D(r) = sum_{x<r} x^{-1/2} ~ 2 sqrt(r), envelope r^{1/2}
  const SimplexSumReport one = simplex_sum_check({0.5}, rs);
  CHECK(one.ratios.back() == doctest::Approx(2.0).epsilon(0.05));
  CHECK_THROWS_AS((void)simplex_sum_check({0.4, 0.4, 0.4, 0.4}, rs), Error);
  CHECK_THROWS_AS((void)simplex_sum_check({-0.1}, rs), Error);
}
