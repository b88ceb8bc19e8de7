#include "core/cumulants.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/kahan.hpp"
#include "core/rho.hpp"

namespace gqv {
namespace {

CumulantReport assemble(std::int64_t n, double s2, double k3f, double k4f) {
  CumulantReport r;
  r.n = n;
  r.sigma_n_sq = s2;
  r.kappa3_f = k3f;
  r.kappa4_f = k4f;
  const double s = std::sqrt(s2);
  r.kappa3_v = std::pow(static_cast<double>(n), 1.5) * k3f / (s * s * s);
  r.kappa4_v = static_cast<double>(n) * n * k4f / (s2 * s2);
  r.m_stat = std::max(std::abs(r.kappa3_v), r.kappa4_v);
  return r;
}

Matrix toeplitz_from(const std::vector<double>& row) {
  const std::int64_t n = static_cast<std::int64_t>(row.size());
  Matrix t(n);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j)
      t.at(i, j) = row[static_cast<size_t>(i >= j ? i - j : j - i)];
  return t;
}

}  // namespace

double sigma_n_sq(const IncrementCovariance& inc) {
  return 2.0 * frobenius_sq(inc.theta);
}

double kappa3(const IncrementCovariance& inc) {
  const Matrix sq = mat_mul(inc.theta, inc.theta);
  const double s = hadamard_sum(sq, inc.theta);
  return 8.0 / std::pow(static_cast<double>(inc.n), 1.5) * s;
}

double kappa4(const IncrementCovariance& inc) {
  const Matrix sq = mat_mul(inc.theta, inc.theta);
  const double s = frobenius_sq(sq);
  return 48.0 / (static_cast<double>(inc.n) * inc.n) * s;
}

CumulantReport cumulant_report(const IncrementCovariance& inc) {
  const Matrix sq = mat_mul(inc.theta, inc.theta);
  const double s2 = 2.0 * frobenius_sq(inc.theta);
  const double nd = static_cast<double>(inc.n);
  const double k3f = 8.0 / std::pow(nd, 1.5) * hadamard_sum(sq, inc.theta);
  const double k4f = 48.0 / (nd * nd) * frobenius_sq(sq);
  return assemble(inc.n, s2, k3f, k4f);
}

CumulantReport cumulant_report(const CovarianceModel& model, std::int64_t n,
                               std::int64_t size_cap) {
  if (n < 1) fail(ErrorCode::InvalidArg, "n must be positive");
  if (model.kind() == ModelKind::Fbm) {
    const ToeplitzChainSums s = toeplitz_chain_sums(model.hurst(), n);
    const double nd = static_cast<double>(n);
    return assemble(n, 2.0 * s.sum_theta2, 8.0 / std::pow(nd, 1.5) * s.sum_ttt,
                    48.0 / (nd * nd) * s.sum_tttt);
  }
  return cumulant_report(increment_covariance(model, n, size_cap));
}

MixedSumReport mixed_sum_bounds(const IncrementCovariance& inc,
                                std::int64_t cap) {
  if (inc.n > cap) fail(ErrorCode::Size, "n exceeds the mixed-sum cap");
  const Matrix& g = inc.gamma;
  const Matrix p = toeplitz_from(inc.rho_row);

  const Matrix gg = mat_mul(g, g);
  const Matrix pp = mat_mul(p, p);
  const Matrix ggg = mat_mul(gg, g);
  const Matrix ggp = mat_mul(gg, p);
  const Matrix gpp = mat_mul(g, pp);

  MixedSumReport out;
  out.n = inc.n;
  out.triple[0] = std::abs(hadamard_sum(gg, g));   // sum ggg
  out.triple[1] = std::abs(hadamard_sum(gg, p));   // sum g(j,k) g(k,l) rho(j-l)
  out.triple[2] = std::abs(hadamard_sum(g, pp));   // sum g(j,k) rho(k-l) rho(j-l)
  // cyclic quadruple pattern: sum_{j,l} (M1^T M2 M3)[j,l] M4[j,l]
  out.quad[0] = std::abs(hadamard_sum(ggg, g));
  out.quad[1] = std::abs(hadamard_sum(ggg, p));
  out.quad[2] = std::abs(hadamard_sum(ggp, p));
  out.quad[3] = std::abs(hadamard_sum(gpp, p));

  const double h = inc.hurst;
  const double nd = static_cast<double>(inc.n);
  const double env3 = std::pow(nd, std::max(6.0 * h - 3.0, 0.0));
  const double env4 = std::pow(nd, std::max(8.0 * h - 4.0, 0.0));
  for (int i = 0; i < 3; ++i) out.triple_ratio[i] = out.triple[i] / env3;
  for (int i = 0; i < 4; ++i) out.quad_ratio[i] = out.quad[i] / env4;
  return out;
}

Condition2Bound asclt_condition2_bound(const CovarianceModel& model,
                                       std::int64_t k, std::int64_t l) {
  if (!(k > 0 && k < l)) fail(ErrorCode::InvalidArg, "requires 0 < k < l");
  // streaming theta avoids the dense matrix: sigma_m^2 = 2 sum_{i,j<m} theta^2
  KahanSum cross, sig_k, sig_l;
  for (std::int64_t i = 0; i < l; ++i)
    for (std::int64_t j = 0; j < l; ++j) {
      const double t = model.theta(i, j);
      const double t2 = t * t;
      if (i < k && j < k) sig_k.add(t2);
      sig_l.add(t2);
      if (i < k) cross.add(t2);
    }
  const double sk = std::sqrt(2.0 * sig_k.value());
  const double sl = std::sqrt(2.0 * sig_l.value());
  Condition2Bound out;
  out.lhs = cross.value() / (sk * sl);
  const double h = model.hurst();
  const double kl = static_cast<double>(k) * l;
  out.rhs_shape = std::sqrt(static_cast<double>(k) / l) +
                  std::pow(kl, std::max(2.0 * h - 1.0, 0.0) - 0.5);
  return out;
}

}  // namespace gqv
