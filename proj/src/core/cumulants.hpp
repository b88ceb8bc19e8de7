#ifndef GQV_CORE_CUMULANTS_HPP_
#define GQV_CORE_CUMULANTS_HPP_

#include <cstdint>

#include "core/covariance.hpp"

namespace gqv {

struct CumulantReport {
  std::int64_t n = 0;
  double sigma_n_sq = 0.0;  // E[Z_n^2] = 2 sum theta^2
  double kappa3_f = 0.0;    // third cumulant of F_n = Z_n / sqrt(n)
  double kappa4_f = 0.0;    // fourth cumulant of F_n
  double kappa3_v = 0.0;    // n^{3/2} kappa3_f / sigma_n^3
  double kappa4_v = 0.0;    // n^2 kappa4_f / sigma_n^4
  double m_stat = 0.0;      // max(|kappa3_v|, kappa4_v)
};

// 2 sum_{i,j} theta(i,j)^2, compensated.
double sigma_n_sq(const IncrementCovariance& inc);

// (8 / n^{3/2}) sum theta(j,k) theta(k,l) theta(j,l) via one matrix
// square and a Hadamard sum.
double kappa3(const IncrementCovariance& inc);

// (48 / n^2) || Theta^2 ||_F^2, the contraction-norm form.
double kappa4(const IncrementCovariance& inc);

CumulantReport cumulant_report(const IncrementCovariance& inc);

// Report without materializing Theta: fBm goes through the O(n^2)
// Toeplitz sweep; other models fall back to the dense path.
CumulantReport cumulant_report(const CovarianceModel& model, std::int64_t n,
                               std::int64_t size_cap = kDefaultSizeCap);

struct MixedSumReport {
  std::int64_t n = 0;
  // |sum ggg|, |sum ggr|, |sum grr| over (j,k,l)
  double triple[3] = {0, 0, 0};
  // |sum gggg|, |sum gggr|, |sum ggrr|, |sum grrr| over (i,j,k,l),
  // cyclic index pattern M1[i,j] M2[i,k] M3[k,l] M4[j,l]
  double quad[4] = {0, 0, 0, 0};
  double triple_ratio[3] = {0, 0, 0};  // triple / n^{(6H-3) v 0}
  double quad_ratio[4] = {0, 0, 0, 0}; // quad / n^{(8H-4) v 0}
};

inline constexpr std::int64_t kMixedSumCap = 1024;

MixedSumReport mixed_sum_bounds(const IncrementCovariance& inc,
                                std::int64_t cap = kMixedSumCap);

struct Condition2Bound {
  double lhs;        // |<f_k, f_l>| = sum_{i<k,j<l} theta(i,j)^2 / (sigma_k sigma_l)
  double rhs_shape;  // sqrt(k/l) + (kl)^{(2H-1) v 0 - 1/2}
};

Condition2Bound asclt_condition2_bound(const CovarianceModel& model,
                                       std::int64_t k, std::int64_t l);

}  // namespace gqv

#endif  // GQV_CORE_CUMULANTS_HPP_
