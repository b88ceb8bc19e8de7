#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "gqv.h"

TEST_CASE("status strings") {
  CHECK(std::string(gqv_strerror(GQV_OK)) == "ok");
  CHECK(gqv_strerror(GQV_ERR_NOT_PSD) != nullptr);
  CHECK(gqv_strerror(static_cast<gqv_status>(99)) != nullptr);
}

TEST_CASE("model lifecycle and validation") {
  gqv_model* m = nullptr;
  REQUIRE(gqv_model_create_fbm(0.6, &m) == GQV_OK);
  CHECK(gqv_model_hurst(m) == 0.6);
  CHECK(std::string(gqv_model_kind(m)) == "fbm");
  double r = 0.0;
  CHECK(gqv_model_cov(m, 2.0, 2.0, &r) == GQV_OK);
  CHECK(r == doctest::Approx(std::pow(2.0, 1.2)).epsilon(1e-14));
  CHECK(gqv_model_cov(m, -1.0, 2.0, &r) == GQV_ERR_INVALID_ARG);
  gqv_model_free(m);
  gqv_model_free(nullptr);  // must be a no-op

  CHECK(gqv_model_create_fbm(1.5, &m) == GQV_ERR_INVALID_ARG);
  CHECK(gqv_model_create_bifbm(0.8, 1.5, &m) == GQV_ERR_INVALID_ARG);
  CHECK(gqv_model_create_gsfbm(0.8, 1.5, &m) == GQV_ERR_INVALID_ARG);
  CHECK(gqv_model_create_fbm(0.5, nullptr) == GQV_ERR_INVALID_ARG);
}

TEST_CASE("increment handle accessors") {
  gqv_model* m = nullptr;
  REQUIRE(gqv_model_create_subfbm(0.6, &m) == GQV_OK);
  gqv_inc* inc = nullptr;
  REQUIRE(gqv_inc_create(m, 16, 0, &inc) == GQV_OK);
  CHECK(gqv_inc_n(inc) == 16);
  double th = 0.0, ga = 0.0, rh = 0.0;
  CHECK(gqv_inc_theta(inc, 3, 5, &th) == GQV_OK);
  CHECK(gqv_inc_gamma(inc, 3, 5, &ga) == GQV_OK);
  CHECK(gqv_inc_rho(inc, 2, &rh) == GQV_OK);
  double rh2 = 0.0;
  CHECK(gqv_inc_rho(inc, 16, &rh2) == GQV_ERR_OUT_OF_RANGE);
  CHECK(gqv_inc_theta(inc, -1, 0, &th) == GQV_ERR_OUT_OF_RANGE);
  // the split is exact
  double g35 = 0.0;
  CHECK(gqv_inc_gamma(inc, 3, 5, &g35) == GQV_OK);
  CHECK(th == ga + gqv_rho(0.6, 2) + (g35 - ga));
  gqv_inc_free(inc);
  CHECK(gqv_inc_create(m, 100000, 0, &inc) == GQV_ERR_SIZE);
  gqv_model_free(m);
}

TEST_CASE("rho sums and series through the C surface") {
  double v = 0.0, tail = 0.0;
  CHECK(gqv_sigma_sq_series(0.5, 100, &v, &tail) == GQV_OK);
  CHECK(v == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(gqv_sigma_sq_series(0.8, 100, &v, &tail) == GQV_ERR_DOMAIN);
  CHECK(gqv_rho_sq_lag_sum(0.6, 100, &v) == GQV_OK);
  CHECK(v > 0.0);
  CHECK(gqv_rho_triple_sum(0.6, 0, &v) == GQV_ERR_INVALID_ARG);
  CHECK(gqv_rho_quad_sum(0.6, 32, &v) == GQV_OK);
}

TEST_CASE("cumulant reports through the C surface") {
  gqv_model* m = nullptr;
  REQUIRE(gqv_model_create_fbm(0.5, &m) == GQV_OK);
  gqv_cumulant_report rep;
  REQUIRE(gqv_cumulants_compute(m, 100, &rep) == GQV_OK);
  CHECK(rep.sigma_n_sq == doctest::Approx(200.0).epsilon(1e-13));
  CHECK(rep.kappa4_v == doctest::Approx(0.12).epsilon(1e-13));

  gqv_inc* inc = nullptr;
  REQUIRE(gqv_inc_create(m, 100, 0, &inc) == GQV_OK);
  gqv_cumulant_report rep2;
  REQUIRE(gqv_cumulants_from_inc(inc, &rep2) == GQV_OK);
  CHECK(rep2.kappa3_v == doctest::Approx(rep.kappa3_v).epsilon(1e-12));
  gqv_mixed_sum_report mix;
  CHECK(gqv_mixed_sums(inc, &mix) == GQV_OK);
  CHECK(mix.n == 100);
  gqv_inc_free(inc);

  double lhs = 0.0, shape = 0.0;
  CHECK(gqv_asclt_condition2(m, 4, 16, &lhs, &shape) == GQV_OK);
  CHECK(lhs == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(gqv_asclt_condition2(m, 16, 4, &lhs, &shape) == GQV_ERR_INVALID_ARG);
  gqv_model_free(m);
}

TEST_CASE("hypothesis checks through the C surface") {
  gqv_model* m = nullptr;
  REQUIRE(gqv_model_create_subfbm(0.6, &m) == GQV_OK);
  gqv_psi_report psi;
  REQUIRE(gqv_psi_scan(m, 1.0, nullptr, 0, 1e-4, nullptr, &psi) == GQV_OK);
  CHECK(psi.fitted_constant > 0.0);

  gqv_inc* inc = nullptr;
  REQUIRE(gqv_inc_create(m, 64, 0, &inc) == GQV_OK);
  gqv_gamma_bound_report gb;
  REQUIRE(gqv_gamma_bound_check(inc, psi.fitted_constant * 1.05, &gb) == GQV_OK);
  CHECK(gb.pass == 1);
  gqv_inc_free(inc);

  gqv_tail_bound_report tb;
  REQUIRE(gqv_increment_tail_bound_check(0.6, 1024, &tb) == GQV_OK);
  CHECK(tb.pass == 1);
  gqv_model_free(m);
}

TEST_CASE("monte carlo and asclt through the C surface") {
  gqv_model* m = nullptr;
  REQUIRE(gqv_model_create_fbm(0.55, &m) == GQV_OK);
  std::vector<double> samples(2000);
  gqv_mc_result mc;
  REQUIRE(gqv_mc_run(m, 32, 2000, 5, 1, samples.data(), &mc) == GQV_OK);
  CHECK(mc.reps == 2000);
  CHECK(std::abs(mc.empirical_mean) < 0.1);
  CHECK(mc.ks_distance < 0.1);
  CHECK(samples[0] != 0.0);

  gqv_asclt_result ar;
  REQUIRE(gqv_asclt_average(m, 1024, GQV_FN_SQUARE, 3, &ar) == GQV_OK);
  CHECK(ar.target == 1.0);
  CHECK(gqv_asclt_average(m, 1, GQV_FN_ONE, 3, &ar) == GQV_ERR_INVALID_ARG);
  gqv_model_free(m);
}

TEST_CASE("rate fits through the C surface") {
  gqv_regime regime;
  double expo = 0.0, logp = 0.0;
  REQUIRE(gqv_theoretical_exponent(0.7, &regime, &expo, &logp) == GQV_OK);
  CHECK(regime == GQV_REGIME_UPPER_34);
  CHECK(expo == doctest::Approx(-0.1).epsilon(1e-12));
  CHECK(gqv_theoretical_exponent(0.8, &regime, &expo, &logp) == GQV_ERR_DOMAIN);

  const double ns[] = {16, 32, 64, 128};
  const double ys[] = {0.25, 0.176776695, 0.125, 0.0883883476};
  gqv_rate_fit fit;
  REQUIRE(gqv_fit_power_law(ns, ys, 4, 0, &fit) == GQV_OK);
  CHECK(fit.exponent == doctest::Approx(-0.5).epsilon(1e-6));

  gqv_model* m = nullptr;
  REQUIRE(gqv_model_create_fbm(0.55, &m) == GQV_OK);
  const int64_t sizes[] = {128, 256, 512, 1024, 2048};
  gqv_regime_report rep;
  double points[5];
  REQUIRE(gqv_regime_check(m, sizes, 5, GQV_USE_M_STAT, 0, 0, 0, &rep, points) ==
          GQV_OK);
  CHECK(rep.pass == 1);
  CHECK(points[0] > points[4]);
  gqv_model_free(m);
}

TEST_CASE("tabulated models through the C surface") {
  const std::string path = "/tmp/gqv_capi_tab.csv";
  {
    std::ofstream f(path);
    f << "T,8,step,1\n";
    f.precision(17);
    for (int i = 0; i <= 8; ++i)
      for (int j = 0; j <= i; ++j) {
        const double r = 0.5 * (std::pow(i, 1.2) + std::pow(j, 1.2) -
                                std::pow(std::abs(i - j), 1.2));
        f << i << "," << j << "," << r << "\n";
      }
  }
  gqv_model* tab = nullptr;
  REQUIRE(gqv_model_create_tabulated(path.c_str(), 0.6, &tab) == GQV_OK);
  gqv_model* fbm = nullptr;
  REQUIRE(gqv_model_create_fbm(0.6, &fbm) == GQV_OK);
  gqv_cumulant_report a, b;
  REQUIRE(gqv_cumulants_compute(tab, 8, &a) == GQV_OK);
  REQUIRE(gqv_cumulants_compute(fbm, 8, &b) == GQV_OK);
  CHECK(a.kappa3_v == doctest::Approx(b.kappa3_v).epsilon(1e-9));
  double out = 0.0;
  CHECK(gqv_model_cov(tab, 100.0, 1.0, &out) == GQV_ERR_OUT_OF_RANGE);
  gqv_model_free(tab);
  gqv_model_free(fbm);
  CHECK(gqv_model_create_tabulated("/tmp/gqv_no_such.csv", 0.6, &tab) ==
        GQV_ERR_IO);
  std::remove(path.c_str());
}
