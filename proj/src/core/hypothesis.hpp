#ifndef GQV_CORE_HYPOTHESIS_HPP_
#define GQV_CORE_HYPOTHESIS_HPP_

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "core/covariance.hpp"

namespace gqv {

// ------------------------------------------------------------------
// Psi bound: the mixed second partial of R - R^B must satisfy
// |Psi(t,s)| <= C'_H (ts)^{H-1} away from the diagonal.
// ------------------------------------------------------------------

struct PsiEstimate {
  double t = 0.0, s = 0.0;
  double psi = 0.0;    // 4-point centered mixed difference of R - R^B
  double bound = 0.0;  // c_h_prime * (ts)^{H-1}
  double step = 0.0;
  bool rejected = false;  // inside the diagonal exclusion band |t-s| <= 2 step
};

struct PsiScanReport {
  std::vector<PsiEstimate> points;
  double fitted_constant = 0.0;  // sup |psi| (ts)^{1-H} over accepted points
  double max_ratio = 0.0;        // sup |psi| / bound
  bool pass = false;
};

PsiScanReport psi_scan(const CovarianceModel& model, double c_h_prime,
                       const std::vector<std::pair<double, double>>& grid,
                       double step = 1e-4);

// Default scan grid: off-diagonal (t,s) pairs in [0.5, 10]^2.
std::vector<std::pair<double, double>> default_psi_grid();

// ------------------------------------------------------------------
// Gamma bound chain: |gamma(i,j)| <= (C'/H^2)[(i+1)^H - i^H][(j+1)^H - j^H].
// ------------------------------------------------------------------

struct GammaBoundReport {
  double max_ratio = 0.0;
  std::int64_t argmax_i = 0, argmax_j = 0;
  bool pass = false;
};

GammaBoundReport gamma_bound_check(const IncrementCovariance& inc,
                                   double c_h_prime);

// ------------------------------------------------------------------
// Increment tail bounds: (i+1)^H - i^H <= H i^{H-1}, and
// S(m) = (1/H^2) sum_{i<m} [(i+1)^H - i^H]^2 <= c m^{(2H-1) v 0}.
// ------------------------------------------------------------------

struct TailBoundReport {
  bool increment_bound_ok = false;
  bool ratios_bounded = false;
  bool informational = false;  // H = 1/2: the envelope is log m, reported only
  double max_ratio = 0.0;
  std::vector<double> ratios;  // S(m)/m^{(2H-1) v 0} over doublings up to n
  bool pass = false;
};

TailBoundReport increment_tail_bound_check(double hurst, std::int64_t n);

// ------------------------------------------------------------------
// Stieltjes integration by parts: -int f phi' = int phi d(nu_f) for a
// step function f, where nu_f carries the boundary atoms.
// ------------------------------------------------------------------

// One piece of a finite step function: coef * 1_{[lo, hi)}.
struct StepPiece {
  double coef;
  double lo, hi;
};

// The signed measure of a step function on [a,b): interior jump atoms
// plus f(a+) delta_a and -f(b-) delta_b.
struct StepMeasure {
  std::vector<std::pair<double, double>> atoms;  // (location, mass)
};

StepMeasure step_measure(const std::vector<StepPiece>& pieces, double a, double b);

struct StieltjesCheck {
  double lhs;  // adaptive quadrature of -int f phi'
  double rhs;  // sum of phi over the atoms
  double residual;
};

StieltjesCheck stieltjes_identity_check(const std::vector<StepPiece>& f,
                                        const std::function<double(double)>& phi,
                                        const std::function<double(double)>& dphi,
                                        double a, double b,
                                        double quad_tol = 1e-10);

// ------------------------------------------------------------------
// Simplex sum: D(r) = sum_{r_i >= 1, sum r_i < r} prod r_i^{v_i - 1}
// versus the envelope r^{sum v_i}.
// ------------------------------------------------------------------

struct SimplexSumReport {
  std::vector<double> d_values;
  std::vector<double> ratios;  // D(r) / r^{sum v}
  bool bounded = false;        // eventually non-increasing across r_values
  bool pass = false;
};

SimplexSumReport simplex_sum_check(const std::vector<double>& v,
                                   const std::vector<std::int64_t>& r_values);

}  // namespace gqv

#endif  // GQV_CORE_HYPOTHESIS_HPP_
