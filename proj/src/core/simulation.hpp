#ifndef GQV_CORE_SIMULATION_HPP_
#define GQV_CORE_SIMULATION_HPP_

#include <cstdint>
#include <vector>

#include "core/covariance.hpp"

namespace gqv {

// Counter-based splittable RNG: splitmix64 output function applied to a
// per-stream key plus a Weyl-sequence counter. Replica r of a run uses
// the stream (seed, r), so replicas can be generated in any order and
// still produce identical samples.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double next_unit();    // (0, 1]
  double next_normal();  // Box-Muller pair, cached

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

double normal_cdf(double x);
double normal_quantile(double p);  // inverse of normal_cdf, bisection-refined

// Lower-triangular Cholesky factor of theta, with an escalating diagonal
// jitter (1e-12 .. 1e-9) for roundoff-scale indefiniteness.
struct CholeskyFactor {
  std::int64_t n = 0;
  Matrix l;
  double jitter = 0.0;  // shift that was actually applied
  double trace = 0.0;   // trace of the original theta
};

CholeskyFactor cholesky_factor(const IncrementCovariance& inc);
CholeskyFactor cholesky_factor(const Matrix& theta);

struct McRun {
  std::int64_t n = 0;
  std::int64_t reps = 0;
  std::uint64_t seed = 0;
  std::vector<double> samples;  // V_n replicas in replica order
  double ks_distance = 0.0;
  double empirical_mean = 0.0;
  double empirical_var = 0.0;
};

// V_n replicas: x = L z, V_n = (sum x_k^2 - trace) / sigma_n.
// Deterministic for fixed (seed, reps) regardless of threads.
McRun sample_vn(const CholeskyFactor& factor, double sigma_n, std::int64_t reps,
                std::uint64_t seed, int threads = 1);

// sup_x |F_emp(x) - Phi(x)|, both one-sided gaps at the sample points.
double ks_distance(std::vector<double> samples);

enum class TestFn { One, IndicatorLeq0, Square };

double test_fn_value(TestFn fn, double x);
double test_fn_target(TestFn fn);  // E[phi(N)]

struct AscltResult {
  std::int64_t n = 0;
  TestFn phi = TestFn::One;
  double log_average = 0.0;  // (1/log n) sum_{k<=n} phi(V_k)/k
  double target = 0.0;
};

// One path of n increments, the nested family V_k for every k <= n from
// running partial sums, and the logarithmic average. Stationary models
// (fBm) go through an O(n)-memory Levinson recursion; other models use
// the dense Cholesky factor and are bound by the size cap.
AscltResult asclt_average(const CovarianceModel& model, std::int64_t n,
                          TestFn phi, std::uint64_t seed,
                          std::int64_t size_cap = kDefaultSizeCap);

// Exact sample of a stationary Gaussian sequence with correlation
// rho_row, driven by the given standard normal innovations. Coincides
// with L z for the Cholesky factor L of the Toeplitz matrix.
std::vector<double> stationary_path(const std::vector<double>& rho_row,
                                    const std::vector<double>& innovations);

}  // namespace gqv

#endif  // GQV_CORE_SIMULATION_HPP_
