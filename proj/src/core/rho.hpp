#ifndef GQV_CORE_RHO_HPP_
#define GQV_CORE_RHO_HPP_

#include <cstdint>
#include <vector>

namespace gqv {

// Stationary fBm increment correlation
//   rho(r) = (|r+1|^{2H} + |r-1|^{2H} - 2|r|^{2H}) / 2.
// The naive formula cancels catastrophically for large |r|; beyond
// |r| = 64 the value is evaluated through the binomial series of
// r^{2H} [(1+1/r)^{2H} + (1-1/r)^{2H} - 2], which keeps full relative
// precision up to |r| ~ 1e8 and beyond.
double rho(double hurst, std::int64_t lag);

// rho(0..count-1) as a table.
std::vector<double> rho_table(double hurst, std::int64_t count);

struct SeriesSum {
  double value;       // truncated sum
  double tail_bound;  // integral bound on the omitted tail
};

// 2 sum_{|r| <= r_max} rho^2(r). Diverges at H >= 3/4.
SeriesSum sigma_sq_series(double hurst, std::int64_t r_max);

// sum_{i,j<n} rho^2(i-j) = sum_d (n-|d|) rho(d)^2, O(n).
double rho_sq_lag_sum(double hurst, std::int64_t n);

// sum_{j,k,l<n} rho(j-k) rho(k-l) rho(j-l) through the lag-count
// reduction over (a,b) = (j-k, k-l); O(n^2).
double rho_triple_sum(double hurst, std::int64_t n);

// sum_{i,j,k,l<n} rho(i-j) rho(i-k) rho(k-l) rho(j-l)
//   = || T^2 ||_F^2 for the Toeplitz matrix T[i][j] = rho(i-j),
// computed by a diagonal recurrence on T^2 in O(n^2) time, O(n) memory.
double rho_quad_sum(double hurst, std::int64_t n);

struct ToeplitzChainSums {
  double sum_theta2;  // sum_{i,j} T[i][j]^2
  double sum_ttt;     // sum_{j,k,l} T[j][k] T[k][l] T[j][l]
  double sum_tttt;    // sum (T^2)[j][k]^2
};

// All three structured sums of the cumulant formulas for a Toeplitz
// increment covariance, in one O(n^2) sweep over the diagonals of T^2.
ToeplitzChainSums toeplitz_chain_sums(double hurst, std::int64_t n);

}  // namespace gqv

#endif  // GQV_CORE_RHO_HPP_
