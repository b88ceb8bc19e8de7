#ifndef GQV_CORE_MATRIX_HPP_
#define GQV_CORE_MATRIX_HPP_

#include <cstdint>
#include <vector>

namespace gqv {

// Row-major dense square matrix. Just enough linear algebra for the
// cumulant reductions; not a general-purpose library.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::int64_t n) : n_(n), a_(static_cast<size_t>(n) * n, 0.0) {}

  std::int64_t n() const { return n_; }
  double& at(std::int64_t i, std::int64_t j) {
    return a_[static_cast<size_t>(i) * n_ + j];
  }
  double at(std::int64_t i, std::int64_t j) const {
    return a_[static_cast<size_t>(i) * n_ + j];
  }
  const double* row(std::int64_t i) const { return a_.data() + static_cast<size_t>(i) * n_; }
  double* row(std::int64_t i) { return a_.data() + static_cast<size_t>(i) * n_; }
  const std::vector<double>& data() const { return a_; }

 private:
  std::int64_t n_ = 0;
  std::vector<double> a_;
};

// C = A * B with blocked extended-precision accumulation.
Matrix mat_mul(const Matrix& a, const Matrix& b);

// sum_{i,j} A[i][j] * B[i][j] with compensated accumulation.
double hadamard_sum(const Matrix& a, const Matrix& b);

// sum_{i,j} A[i][j]^2.
double frobenius_sq(const Matrix& a);

}  // namespace gqv

#endif  // GQV_CORE_MATRIX_HPP_
