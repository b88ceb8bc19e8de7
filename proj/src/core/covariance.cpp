#include "core/covariance.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "core/error.hpp"
#include "core/rho.hpp"

namespace gqv {
namespace {

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }

std::int64_t grid_index(double x, double step, const char* what) {
  const double q = x / step;
  const double r = std::round(q);
  if (std::abs(q - r) > 1e-9)
    fail(ErrorCode::Io, std::string(what) + " is not aligned to the grid step");
  return static_cast<std::int64_t>(r);
}

// Plain Cholesky feasibility probe with a fixed diagonal shift; used to
// reject tabulated inputs that are indefinite beyond roundoff.
bool psd_within(const Matrix& m, double jitter) {
  const std::int64_t n = m.n();
  Matrix l = m;
  for (std::int64_t i = 0; i < n; ++i) l.at(i, i) += jitter;
  for (std::int64_t j = 0; j < n; ++j) {
    double d = l.at(j, j);
    for (std::int64_t k = 0; k < j; ++k) d -= l.at(j, k) * l.at(j, k);
    if (d <= 0.0) return false;
    const double dj = std::sqrt(d);
    l.at(j, j) = dj;
    for (std::int64_t i = j + 1; i < n; ++i) {
      double v = l.at(i, j);
      for (std::int64_t k = 0; k < j; ++k) v -= l.at(i, k) * l.at(j, k);
      l.at(i, j) = v / dj;
    }
  }
  return true;
}

}  // namespace

const char* kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Fbm: return "fbm";
    case ModelKind::SubFbm: return "subfbm";
    case ModelKind::BiFbm: return "bifbm";
    case ModelKind::GenSubFbm: return "gsfbm";
    case ModelKind::Tabulated: return "tabulated";
  }
  return "?";
}

CovarianceModel CovarianceModel::fbm(double hurst) {
  if (!in_open_unit(hurst)) fail(ErrorCode::InvalidArg, "fbm requires H in (0,1)");
  CovarianceModel m;
  m.kind_ = ModelKind::Fbm;
  m.hurst_ = hurst;
  return m;
}

CovarianceModel CovarianceModel::subfbm(double hurst) {
  if (!in_open_unit(hurst)) fail(ErrorCode::InvalidArg, "subfbm requires H in (0,1)");
  CovarianceModel m;
  m.kind_ = ModelKind::SubFbm;
  m.hurst_ = hurst;
  return m;
}

CovarianceModel CovarianceModel::bifbm(double h_prime, double k) {
  if (!in_open_unit(h_prime) || !(k > 0.0 && k <= 1.0))
    fail(ErrorCode::InvalidArg, "bifbm requires H' in (0,1), K in (0,1]");
  CovarianceModel m;
  m.kind_ = ModelKind::BiFbm;
  m.h_prime_ = h_prime;
  m.k_param_ = k;
  m.hurst_ = h_prime * k;
  return m;
}

CovarianceModel CovarianceModel::gen_subfbm(double h_prime, double k) {
  if (!in_open_unit(h_prime) || !(k >= 1.0 && k < 2.0) || !in_open_unit(h_prime * k))
    fail(ErrorCode::InvalidArg,
         "gsfbm requires H' in (0,1), K in [1,2), H'K in (0,1)");
  CovarianceModel m;
  m.kind_ = ModelKind::GenSubFbm;
  m.h_prime_ = h_prime;
  m.k_param_ = k;
  m.hurst_ = h_prime * k;
  return m;
}

CovarianceModel CovarianceModel::tabulated(CovarianceGrid grid, double hurst) {
  if (!in_open_unit(hurst)) fail(ErrorCode::InvalidArg, "tabulated requires H in (0,1)");
  if (grid.m < 1 || grid.step <= 0.0 ||
      grid.values.size() != static_cast<size_t>((grid.m + 1) * (grid.m + 1)))
    fail(ErrorCode::InvalidArg, "malformed covariance grid");
  const std::int64_t nodes = grid.m + 1;
  double scale = 0.0;
  for (double v : grid.values) scale = std::max(scale, std::abs(v));
  for (std::int64_t i = 0; i < nodes; ++i) {
    if (std::abs(grid.at(0, i)) > 1e-9 * std::max(1.0, scale))
      fail(ErrorCode::InvalidArg, "tabulated covariance violates R(0,s) = 0");
    for (std::int64_t j = 0; j < i; ++j) {
      if (std::abs(grid.at(i, j) - grid.at(j, i)) > 1e-9 * std::max(1.0, scale))
        fail(ErrorCode::InvalidArg, "tabulated covariance is not symmetric");
    }
  }
  CovarianceModel m;
  m.kind_ = ModelKind::Tabulated;
  m.hurst_ = hurst;
  m.grid_ = std::move(grid);
  return m;
}

CovarianceModel CovarianceModel::tabulated_from_csv(const std::string& path,
                                                    double hurst) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::Io, "empty covariance file");
  double horizon = 0.0, step = 0.0;
  {
    std::istringstream hdr(line);
    std::string tag;
    char comma;
    std::getline(hdr, tag, ',');
    if (tag != "T" || !(hdr >> horizon >> comma) || comma != ',')
      fail(ErrorCode::Io, "covariance header must be T,<horizon>,step,<dt>");
    std::string tag2;
    std::getline(hdr, tag2, ',');
    // the stream already consumed the comma after horizon; tag2 is "step"
    if (tag2 != "step" || !(hdr >> step) || step <= 0.0 || horizon <= 0.0)
      fail(ErrorCode::Io, "covariance header must be T,<horizon>,step,<dt>");
  }
  CovarianceGrid grid;
  grid.horizon = horizon;
  grid.step = step;
  grid.m = grid_index(horizon, step, "horizon");
  const std::int64_t nodes = grid.m + 1;
  const double nan = std::nan("");
  grid.values.assign(static_cast<size_t>(nodes * nodes), nan);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    double t, s, v;
    char c1, c2;
    if (!(row >> t >> c1 >> s >> c2 >> v) || c1 != ',' || c2 != ',')
      fail(ErrorCode::Io, "bad covariance row: " + line);
    const std::int64_t i = grid_index(t, step, "t");
    const std::int64_t j = grid_index(s, step, "s");
    if (i < 0 || i >= nodes || j < 0 || j >= nodes)
      fail(ErrorCode::Io, "covariance row outside the grid: " + line);
    grid.values[static_cast<size_t>(i) * nodes + j] = v;
    grid.values[static_cast<size_t>(j) * nodes + i] = v;
  }
  for (double v : grid.values)
    if (std::isnan(v)) fail(ErrorCode::Io, "covariance grid has missing entries");
  return tabulated(std::move(grid), hurst);
}

std::string CovarianceModel::params_string() const {
  std::ostringstream os;
  switch (kind_) {
    case ModelKind::BiFbm:
    case ModelKind::GenSubFbm:
      os << "hp=" << h_prime_ << ";k=" << k_param_;
      break;
    default:
      os << "h=" << hurst_;
      break;
  }
  return os.str();
}

double CovarianceModel::cov(double t, double s) const {
  if (t < 0.0 || s < 0.0) fail(ErrorCode::InvalidArg, "cov requires t,s >= 0");
  const double h2 = 2.0 * hurst_;
  switch (kind_) {
    case ModelKind::Fbm:
      return 0.5 * (std::pow(t, h2) + std::pow(s, h2) - std::pow(std::abs(t - s), h2));
    case ModelKind::SubFbm:
      return std::pow(t, h2) + std::pow(s, h2) -
             0.5 * (std::pow(t + s, h2) + std::pow(std::abs(t - s), h2));
    case ModelKind::BiFbm: {
      const double hp2 = 2.0 * h_prime_;
      return 0.5 * (std::pow(std::pow(t, hp2) + std::pow(s, hp2), k_param_) -
                    std::pow(std::abs(t - s), h2));
    }
    case ModelKind::GenSubFbm: {
      const double hp2 = 2.0 * h_prime_;
      return std::pow(std::pow(t, hp2) + std::pow(s, hp2), k_param_) -
             0.5 * (std::pow(t + s, h2) + std::pow(std::abs(t - s), h2));
    }
    case ModelKind::Tabulated: {
      if (t > grid_.horizon || s > grid_.horizon)
        fail(ErrorCode::OutOfRange, "tabulated query outside the grid");
      const double qt = t / grid_.step, qs = s / grid_.step;
      const std::int64_t i = std::min<std::int64_t>(grid_.m - 1, static_cast<std::int64_t>(qt));
      const std::int64_t j = std::min<std::int64_t>(grid_.m - 1, static_cast<std::int64_t>(qs));
      const double u = qt - i, v = qs - j;
      return (1 - u) * (1 - v) * grid_.at(i, j) + u * (1 - v) * grid_.at(i + 1, j) +
             (1 - u) * v * grid_.at(i, j + 1) + u * v * grid_.at(i + 1, j + 1);
    }
  }
  fail(ErrorCode::Internal, "unreachable");
}

double CovarianceModel::gamma(std::int64_t i, std::int64_t j) const {
  switch (kind_) {
    case ModelKind::Fbm:
      return 0.0;
    case ModelKind::SubFbm:
      // the (t+s)^{2H} term contributes the central second difference of
      // x^{2H} at x = i+j+1, which is 2 rho(i+j+1)
      return -rho(hurst_, i + j + 1);
    case ModelKind::BiFbm:
    case ModelKind::GenSubFbm: {
      const double hp2 = 2.0 * h_prime_;
      auto g = [&](std::int64_t a, std::int64_t b) {
        return std::pow(std::pow(static_cast<double>(a), hp2) +
                            std::pow(static_cast<double>(b), hp2),
                        k_param_);
      };
      const double d2 = g(i + 1, j + 1) - g(i + 1, j) - g(i, j + 1) + g(i, j);
      if (kind_ == ModelKind::BiFbm) return 0.5 * d2;
      return d2 - rho(hurst_, i + j + 1);
    }
    case ModelKind::Tabulated:
      return theta(i, j) - rho(hurst_, i - j);
  }
  fail(ErrorCode::Internal, "unreachable");
}

double CovarianceModel::theta(std::int64_t i, std::int64_t j) const {
  if (i < 0 || j < 0) fail(ErrorCode::InvalidArg, "theta requires i,j >= 0");
  if (kind_ == ModelKind::Tabulated) {
    if (std::abs(grid_.step - 1.0) > 1e-12)
      fail(ErrorCode::InvalidArg,
           "increments require a tabulated grid with unit step");
    if (i + 1 > grid_.m || j + 1 > grid_.m)
      fail(ErrorCode::OutOfRange, "increment index beyond the tabulated horizon");
    return grid_.at(i + 1, j + 1) - grid_.at(i + 1, j) - grid_.at(i, j + 1) +
           grid_.at(i, j);
  }
  return gamma(i, j) + rho(hurst_, i - j);
}

IncrementCovariance increment_covariance(const CovarianceModel& model,
                                         std::int64_t n, std::int64_t size_cap) {
  if (n < 1) fail(ErrorCode::InvalidArg, "n must be positive");
  if (n > size_cap) fail(ErrorCode::Size, "n exceeds the dense size cap");
  IncrementCovariance inc;
  inc.n = n;
  inc.hurst = model.hurst();
  inc.rho_row = rho_table(model.hurst(), n);
  inc.gamma = Matrix(n);
  inc.theta = Matrix(n);

  if (model.kind() == ModelKind::BiFbm || model.kind() == ModelKind::GenSubFbm) {
    // one pow per grid node instead of four per entry
    const double hp2 = 2.0 * model.h_prime();
    std::vector<double> p(static_cast<size_t>(n) + 1);
    for (std::int64_t a = 0; a <= n; ++a)
      p[static_cast<size_t>(a)] = std::pow(static_cast<double>(a), hp2);
    Matrix g(n + 1);
    for (std::int64_t a = 0; a <= n; ++a)
      for (std::int64_t b = 0; b <= a; ++b) {
        const double v = std::pow(p[static_cast<size_t>(a)] + p[static_cast<size_t>(b)],
                                  model.k_param());
        g.at(a, b) = v;
        g.at(b, a) = v;
      }
    const bool bi = model.kind() == ModelKind::BiFbm;
    const std::vector<double> rlong = rho_table(model.hurst(), 2 * n);
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = 0; j <= i; ++j) {
        const double d2 =
            g.at(i + 1, j + 1) - g.at(i + 1, j) - g.at(i, j + 1) + g.at(i, j);
        const double v = bi ? 0.5 * d2 : d2 - rlong[static_cast<size_t>(i + j + 1)];
        inc.gamma.at(i, j) = v;
        inc.gamma.at(j, i) = v;
      }
  } else if (model.kind() == ModelKind::SubFbm) {
    const std::vector<double> rlong = rho_table(model.hurst(), 2 * n);
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = 0; j <= i; ++j) {
        const double v = -rlong[static_cast<size_t>(i + j + 1)];
        inc.gamma.at(i, j) = v;
        inc.gamma.at(j, i) = v;
      }
  } else if (model.kind() == ModelKind::Tabulated) {
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = 0; j <= i; ++j) {
        const double th = model.theta(i, j);
        const std::int64_t lag = i - j;
        const double v = th - inc.rho_row[static_cast<size_t>(lag)];
        inc.gamma.at(i, j) = v;
        inc.gamma.at(j, i) = v;
      }
  }
  // Fbm: gamma stays identically zero.

  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j) {
      const std::int64_t lag = i >= j ? i - j : j - i;
      inc.theta.at(i, j) = inc.gamma.at(i, j) + inc.rho_row[static_cast<size_t>(lag)];
    }

  if (model.kind() == ModelKind::Tabulated && !psd_within(inc.theta, 1e-8))
    fail(ErrorCode::NotPsd, "tabulated increment covariance is not PSD");
  return inc;
}

}  // namespace gqv
