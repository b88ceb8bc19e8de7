#ifndef GQV_CORE_RATES_HPP_
#define GQV_CORE_RATES_HPP_

#include <cstdint>
#include <vector>

#include "core/covariance.hpp"

namespace gqv {

enum class Regime {
  OptimalSqrt,  // H < 2/3: total-variation distance ~ n^{-1/2}, two-sided
  Critical23,   // H = 2/3: n^{-1/2} log^2 n
  Upper34,      // 2/3 < H < 3/4: upper bound n^{(4H-3)/2}
  Boundary34,   // H = 3/4: (log n)^{-3/2}
};

struct TheoreticalRate {
  Regime regime = Regime::OptimalSqrt;
  double exponent = 0.0;
  double log_power = 0.0;
};

// Regime table for H in (0, 3/4]; no rate is available for H > 3/4.
TheoreticalRate theoretical_exponent(double hurst);

struct RateFit {
  double exponent = 0.0;   // slope of log y against log n
  double log_power = 0.0;  // fitted power of log n (with_log only)
  double r_squared = 0.0;
};

// OLS on log y = log c + a log n (+ b log log n). Requires >= 4 points,
// n strictly increasing, y > 0.
RateFit fit_power_law(const std::vector<double>& n, const std::vector<double>& y,
                      bool with_log);

enum class RateUse { Kappa3, Kappa4, MStat, Ks };

struct RegimeReport {
  RateFit fit;
  TheoreticalRate theoretical;
  // Exponent predicted by the rho-sum growth regimes for the chosen
  // statistic (|kappa3|: -1/2 then 6H-9/2; kappa4: -1 then 8H-6); NaN at
  // the critical H where a log factor bends the fit, and for KS.
  double sharper_exponent = 0.0;
  bool two_sided = false;  // equivalence regime: assert |fit - theor| <= tol
  bool proxy = false;      // KS tracks the distance from below only
  bool pass = false;
  std::vector<double> points;  // the fitted y-sequence, one per n
};

// Computes the chosen statistic over n_list (exact cumulants, or Monte
// Carlo KS with the given reps/seed), fits a power law, and compares the
// fitted exponent with the regime table. Tolerances: 0.05 on exact
// cumulant fits, 0.15 on KS fits, 0.10 against the sharper prediction.
RegimeReport regime_check(const CovarianceModel& model,
                          const std::vector<std::int64_t>& n_list, RateUse use,
                          bool with_log, std::int64_t reps, std::uint64_t seed,
                          int threads = 1,
                          std::int64_t size_cap = kDefaultSizeCap);

}  // namespace gqv

#endif  // GQV_CORE_RATES_HPP_
