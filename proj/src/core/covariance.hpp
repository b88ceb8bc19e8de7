#ifndef GQV_CORE_COVARIANCE_HPP_
#define GQV_CORE_COVARIANCE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "core/matrix.hpp"

namespace gqv {

enum class ModelKind { Fbm, SubFbm, BiFbm, GenSubFbm, Tabulated };

const char* kind_name(ModelKind kind);

// Tabulated covariance on a uniform grid: R(i*dt, j*dt) for
// 0 <= i,j <= m with horizon T = m*dt.
struct CovarianceGrid {
  double horizon = 0.0;
  double step = 0.0;
  std::int64_t m = 0;  // nodes per axis = m + 1
  std::vector<double> values;  // (m+1)^2, row-major, symmetric

  double at(std::int64_t i, std::int64_t j) const {
    return values[static_cast<size_t>(i) * (m + 1) + j];
  }
};

// A parametrized covariance kernel R(t,s) with effective Hurst index H.
// Immutable after construction; safe to share across threads.
class CovarianceModel {
 public:
  static CovarianceModel fbm(double hurst);
  static CovarianceModel subfbm(double hurst);
  static CovarianceModel bifbm(double h_prime, double k);      // H = H'K, K in (0,1)
  static CovarianceModel gen_subfbm(double h_prime, double k); // H = H'K, K in [1,2)
  static CovarianceModel tabulated(CovarianceGrid grid, double hurst);
  static CovarianceModel tabulated_from_csv(const std::string& path, double hurst);

  ModelKind kind() const { return kind_; }
  double hurst() const { return hurst_; }
  double h_prime() const { return h_prime_; }
  double k_param() const { return k_param_; }
  const CovarianceGrid& grid() const { return grid_; }
  std::string params_string() const;

  // R(t,s); closed form, or bilinear interpolation for tabulated models.
  double cov(double t, double s) const;

  // theta(i,j) = R(i+1,j+1) - R(i+1,j) - R(i,j+1) + R(i,j), evaluated
  // through the cancellation-free split theta = gamma + rho for the
  // closed-form families.
  double theta(std::int64_t i, std::int64_t j) const;
  double gamma(std::int64_t i, std::int64_t j) const;

 private:
  CovarianceModel() = default;

  ModelKind kind_ = ModelKind::Fbm;
  double hurst_ = 0.5;
  double h_prime_ = 0.0;
  double k_param_ = 0.0;
  CovarianceGrid grid_;
};

// Default cap on dense increment-covariance matrices (O(n^2) storage).
inline constexpr std::int64_t kDefaultSizeCap = 8192;

// The n x n increment Gram matrix Theta with its rho/gamma split:
// theta = gamma + Toeplitz(rho_row), exactly by construction.
struct IncrementCovariance {
  std::int64_t n = 0;
  double hurst = 0.5;
  Matrix theta;
  Matrix gamma;
  std::vector<double> rho_row;
};

IncrementCovariance increment_covariance(const CovarianceModel& model,
                                         std::int64_t n,
                                         std::int64_t size_cap = kDefaultSizeCap);

}  // namespace gqv

#endif  // GQV_CORE_COVARIANCE_HPP_
