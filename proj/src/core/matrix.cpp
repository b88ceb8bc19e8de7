#include "core/matrix.hpp"

#include <algorithm>

#include "core/error.hpp"
#include "core/kahan.hpp"

namespace gqv {

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  const std::int64_t n = a.n();
  if (b.n() != n) fail(ErrorCode::InvalidArg, "matrix size mismatch");
  Matrix c(n);
  constexpr std::int64_t kBlock = 64;
  std::vector<long double> acc(static_cast<size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), 0.0L);
    for (std::int64_t k0 = 0; k0 < n; k0 += kBlock) {
      const std::int64_t k1 = std::min(n, k0 + kBlock);
      for (std::int64_t k = k0; k < k1; ++k) {
        const long double aik = a.at(i, k);
        const double* brow = b.row(k);
        for (std::int64_t j = 0; j < n; ++j) acc[static_cast<size_t>(j)] += aik * brow[j];
      }
    }
    double* crow = c.row(i);
    for (std::int64_t j = 0; j < n; ++j) crow[j] = static_cast<double>(acc[static_cast<size_t>(j)]);
  }
  return c;
}

double hadamard_sum(const Matrix& a, const Matrix& b) {
  const std::int64_t n = a.n();
  if (b.n() != n) fail(ErrorCode::InvalidArg, "matrix size mismatch");
  KahanSum acc;
  for (std::int64_t i = 0; i < n; ++i) {
    const double* ar = a.row(i);
    const double* br = b.row(i);
    for (std::int64_t j = 0; j < n; ++j) acc.add(ar[j] * br[j]);
  }
  return acc.value();
}

double frobenius_sq(const Matrix& a) { return hadamard_sum(a, a); }

}  // namespace gqv
