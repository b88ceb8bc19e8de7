#include "core/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "core/error.hpp"
#include "core/kahan.hpp"

namespace gqv {
namespace {

double fbm_cov(double h, double t, double s) {
  const double h2 = 2.0 * h;
  return 0.5 * (std::pow(t, h2) + std::pow(s, h2) - std::pow(std::abs(t - s), h2));
}

// (i+1)^H - i^H without cancellation for large i.
double power_increment(double h, std::int64_t i) {
  if (i == 0) return 1.0;
  const double x = static_cast<double>(i);
  return std::pow(x, h) * std::expm1(h * std::log1p(1.0 / x));
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (a >= b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

PsiScanReport psi_scan(const CovarianceModel& model, double c_h_prime,
                       const std::vector<std::pair<double, double>>& grid,
                       double step) {
  if (!(c_h_prime > 0.0)) fail(ErrorCode::InvalidArg, "c_h_prime must be positive");
  if (!(step > 0.0)) fail(ErrorCode::InvalidArg, "step must be positive");
  const double h = model.hurst();
  auto diff = [&](double t, double s) {
    return model.cov(t, s) - fbm_cov(h, t, s);
  };
  PsiScanReport rep;
  for (const auto& [t, s] : grid) {
    PsiEstimate e;
    e.t = t;
    e.s = s;
    e.step = step;
    if (!(t > step && s > step) || std::abs(t - s) <= 2.0 * step) {
      e.rejected = true;
      rep.points.push_back(e);
      continue;
    }
    e.psi = (diff(t + step, s + step) - diff(t + step, s - step) -
             diff(t - step, s + step) + diff(t - step, s - step)) /
            (4.0 * step * step);
    e.bound = c_h_prime * std::pow(t * s, h - 1.0);
    rep.points.push_back(e);
    rep.fitted_constant =
        std::max(rep.fitted_constant, std::abs(e.psi) * std::pow(t * s, 1.0 - h));
    rep.max_ratio = std::max(rep.max_ratio, std::abs(e.psi) / e.bound);
  }
  rep.pass = rep.max_ratio <= 1.0 + 1e-9;
  return rep;
}

std::vector<std::pair<double, double>> default_psi_grid() {
  static const double pts[] = {0.5, 0.8, 1.0, 1.5, 2.0, 3.0, 5.0, 7.0, 10.0};
  std::vector<std::pair<double, double>> grid;
  for (double t : pts)
    for (double s : pts)
      if (t != s) grid.emplace_back(t, s);
  // near-diagonal points, still outside the exclusion band at step 1e-4
  for (double t : pts) grid.emplace_back(t, t * 1.01);
  return grid;
}

GammaBoundReport gamma_bound_check(const IncrementCovariance& inc,
                                   double c_h_prime) {
  if (!(c_h_prime > 0.0)) fail(ErrorCode::InvalidArg, "c_h_prime must be positive");
  const double h = inc.hurst;
  std::vector<double> w(static_cast<size_t>(inc.n));
  for (std::int64_t i = 0; i < inc.n; ++i)
    w[static_cast<size_t>(i)] = power_increment(h, i);
  GammaBoundReport rep;
  const double scale = c_h_prime / (h * h);
  for (std::int64_t i = 0; i < inc.n; ++i)
    for (std::int64_t j = 0; j < inc.n; ++j) {
      const double bound = scale * w[static_cast<size_t>(i)] * w[static_cast<size_t>(j)];
      const double ratio = std::abs(inc.gamma.at(i, j)) / bound;
      if (ratio > rep.max_ratio) {
        rep.max_ratio = ratio;
        rep.argmax_i = i;
        rep.argmax_j = j;
      }
    }
  rep.pass = rep.max_ratio <= 1.0 + 1e-9;
  return rep;
}

TailBoundReport increment_tail_bound_check(double hurst, std::int64_t n) {
  if (n < 2) fail(ErrorCode::InvalidArg, "n must be >= 2");
  TailBoundReport rep;
  rep.increment_bound_ok = true;
  for (std::int64_t i = 1; i < n; ++i) {
    const double lhs = power_increment(hurst, i);
    const double rhs = hurst * std::pow(static_cast<double>(i), hurst - 1.0);
    if (lhs > rhs * (1.0 + 1e-12)) {
      rep.increment_bound_ok = false;
      break;
    }
  }

  std::vector<std::int64_t> sizes;
  for (std::int64_t m = n; m >= 16 && sizes.size() < 8; m /= 2) sizes.push_back(m);
  if (sizes.empty()) sizes.push_back(n);
  std::reverse(sizes.begin(), sizes.end());

  rep.informational = std::abs(hurst - 0.5) < 1e-12;
  const double expo = std::max(2.0 * hurst - 1.0, 0.0);
  for (std::int64_t m : sizes) {
    KahanSum s;
    for (std::int64_t i = 0; i < m; ++i) {
      const double wi = power_increment(hurst, i);
      s.add(wi * wi);
    }
    const double sm = s.value() / (hurst * hurst);
    rep.ratios.push_back(sm / std::pow(static_cast<double>(m), expo));
  }
  rep.max_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());

  if (!rep.informational && rep.ratios.size() >= 3) {
    // The ratio approaches its limit like m^{-|2H-1|}, so over doublings
    // the successive differences must shrink by about 2^{-|2H-1|};
    // decreasing ratios are bounded outright.
    rep.ratios_bounded = true;
    const double q = std::pow(2.0, -std::abs(2.0 * hurst - 1.0)) + 0.1;
    const size_t tail = rep.ratios.size() >= 4 ? rep.ratios.size() - 3 : 1;
    for (size_t i = tail; i + 1 < rep.ratios.size(); ++i) {
      const double d1 = rep.ratios[i] - rep.ratios[i - 1];
      const double d2 = rep.ratios[i + 1] - rep.ratios[i];
      if (d2 > 0.0 && !(d2 <= q * d1 + 1e-12)) rep.ratios_bounded = false;
    }
  }
  rep.pass = rep.increment_bound_ok && (rep.informational || rep.ratios_bounded);
  return rep;
}

StepMeasure step_measure(const std::vector<StepPiece>& pieces, double a, double b) {
  auto value_at = [&](double x) {
    if (x < a || x >= b) return 0.0;
    double v = 0.0;
    for (const auto& p : pieces)
      if (x >= p.lo && x < p.hi) v += p.coef;
    return v;
  };
  std::vector<double> cuts{a, b};
  for (const auto& p : pieces) {
    if (p.lo >= p.hi) fail(ErrorCode::InvalidArg, "empty step piece");
    cuts.push_back(p.lo);
    cuts.push_back(p.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  StepMeasure m;
  for (double x : cuts) {
    if (x < a || x > b) continue;
    const double before = x <= a ? 0.0 : value_at(std::nextafter(x, a - 1.0));
    const double after = x >= b ? 0.0 : value_at(x);
    const double mass = after - before;
    if (mass != 0.0) m.atoms.emplace_back(x, mass);
  }
  return m;
}

StieltjesCheck stieltjes_identity_check(const std::vector<StepPiece>& f,
                                        const std::function<double(double)>& phi,
                                        const std::function<double(double)>& dphi,
                                        double a, double b, double quad_tol) {
  if (!(a < b)) fail(ErrorCode::InvalidArg, "requires a < b");
  for (const auto& p : f)
    if (p.lo < a || p.hi > b)
      fail(ErrorCode::Unsupported, "step pieces must lie inside [a,b)");

  std::vector<double> cuts{a, b};
  for (const auto& p : f) {
    cuts.push_back(p.lo);
    cuts.push_back(p.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto value_at = [&](double x) {
    double v = 0.0;
    for (const auto& p : f)
      if (x >= p.lo && x < p.hi) v += p.coef;
    return v;
  };

  KahanSum lhs;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    const double fv = value_at(mid);
    if (fv == 0.0) continue;
    lhs.add(-fv * integrate(dphi, cuts[i], cuts[i + 1], quad_tol));
  }

  const StepMeasure nu = step_measure(f, a, b);
  KahanSum rhs;
  for (const auto& [x, mass] : nu.atoms) rhs.add(phi(x) * mass);

  StieltjesCheck out;
  out.lhs = lhs.value();
  out.rhs = rhs.value();
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

SimplexSumReport simplex_sum_check(const std::vector<double>& v,
                                   const std::vector<std::int64_t>& r_values) {
  const size_t l = v.size();
  if (l == 0 || l > 3)
    fail(ErrorCode::Unsupported, "simplex enumeration supports 1 <= l <= 3");
  for (double vi : v)
    if (!(vi > 0.0)) fail(ErrorCode::InvalidArg, "exponents v_i must be positive");
  for (size_t i = 0; i < r_values.size(); ++i) {
    if (r_values[i] < static_cast<std::int64_t>(l) + 1)
      fail(ErrorCode::InvalidArg, "each r must be at least l+1");
    if (i > 0 && r_values[i] <= r_values[i - 1])
      fail(ErrorCode::InvalidArg, "r_values must be increasing");
  }
  const std::int64_t r_max = r_values.back();
  if (l == 3 && r_max > 30000)
    fail(ErrorCode::Unsupported, "triple enumeration too large");

  // power tables and prefix sums for the innermost index
  std::vector<std::vector<double>> p(l);
  for (size_t d = 0; d < l; ++d) {
    p[d].assign(static_cast<size_t>(r_max), 0.0);
    for (std::int64_t x = 1; x < r_max; ++x)
      p[d][static_cast<size_t>(x)] = std::pow(static_cast<double>(x), v[d] - 1.0);
  }
  std::vector<double> prefix(static_cast<size_t>(r_max), 0.0);
  {
    KahanSum acc;
    for (std::int64_t x = 1; x < r_max; ++x) {
      acc.add(p[l - 1][static_cast<size_t>(x)]);
      prefix[static_cast<size_t>(x)] = acc.value();
    }
  }
  auto count_below = [&](std::int64_t budget) {
    // sum over the last index r_l with r_l <= budget
    if (budget < 1) return 0.0;
    return prefix[static_cast<size_t>(std::min(budget, r_max - 1))];
  };

  double sum_v = 0.0;
  for (double vi : v) sum_v += vi;

  SimplexSumReport rep;
  for (std::int64_t r : r_values) {
    KahanSum d;
    if (l == 1) {
      d.add(count_below(r - 1));
    } else if (l == 2) {
      for (std::int64_t r1 = 1; r1 + 1 < r; ++r1)
        d.add(p[0][static_cast<size_t>(r1)] * count_below(r - r1 - 1));
    } else {
      for (std::int64_t r1 = 1; r1 + 2 < r; ++r1)
        for (std::int64_t r2 = 1; r1 + r2 + 1 < r; ++r2)
          d.add(p[0][static_cast<size_t>(r1)] * p[1][static_cast<size_t>(r2)] *
                count_below(r - r1 - r2 - 1));
    }
    rep.d_values.push_back(d.value());
    rep.ratios.push_back(d.value() / std::pow(static_cast<double>(r), sum_v));
  }
  // The ratio climbs toward its limit like c - a r^{-beta}; boundedness
  // shows as geometric shrinkage of the increments across the (widely
  // spaced) r_values. Decreasing ratios are bounded outright.
  rep.bounded = true;
  for (size_t i = 2; i < rep.ratios.size(); ++i) {
    const double d1 = rep.ratios[i - 1] - rep.ratios[i - 2];
    const double d2 = rep.ratios[i] - rep.ratios[i - 1];
    if (d2 > 0.0 && !(d2 <= 0.9 * d1 + 1e-12)) rep.bounded = false;
  }
  rep.pass = rep.bounded;
  return rep;
}

}  // namespace gqv
