#include "slelab/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace slelab::mc {

namespace {

struct LineFit {
  double slope, intercept;
};

LineFit wls(const std::vector<double>& x, const std::vector<double>& y,
            const std::vector<double>& w, std::size_t skip) {
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i == skip) continue;
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
    sxx += w[i] * x[i] * x[i];
    sxy += w[i] * x[i] * y[i];
  }
  double det = sw * sxx - sx * sx;
  if (det == 0.0) throw std::invalid_argument("fit: degenerate abscissae");
  return {(sw * sxy - sx * sy) / det, (sxx * sy - sx * sxy) / det};
}

}  // namespace

FitResult weighted_linear_fit(const std::vector<double>& x,
                              const std::vector<double>& y,
                              const std::vector<double>& sigma) {
  std::size_t m = x.size();
  if (m < 3 || y.size() != m || sigma.size() != m)
    throw std::invalid_argument("fit: need >= 3 points with matching sizes");

  bool weighted = true;
  for (double s : sigma)
    if (!(s > 0.0)) weighted = false;
  std::vector<double> w(m, 1.0);
  if (weighted)
    for (std::size_t i = 0; i < m; ++i) w[i] = 1.0 / (sigma[i] * sigma[i]);

  LineFit full = wls(x, y, w, m);  // skip index out of range = no skip

  FitResult out;
  out.slope = full.slope;
  out.intercept = full.intercept;
  out.method = weighted ? "wls+jackknife" : "ols+jackknife";

  // Jackknife over points.
  std::vector<double> js(m);
  double jmean = 0;
  for (std::size_t i = 0; i < m; ++i) {
    js[i] = wls(x, y, w, i).slope;
    jmean += js[i];
  }
  jmean /= static_cast<double>(m);
  double var = 0;
  for (double s : js) var += (s - jmean) * (s - jmean);
  var *= (static_cast<double>(m) - 1.0) / static_cast<double>(m);
  out.slope_stderr = std::sqrt(var);

  // Weighted R^2.
  double sw = 0, sy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sw += w[i];
    sy += w[i] * y[i];
  }
  double ybar = sy / sw, ss_tot = 0, ss_res = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double fit = out.intercept + out.slope * x[i];
    ss_tot += w[i] * (y[i] - ybar) * (y[i] - ybar);
    ss_res += w[i] * (y[i] - fit) * (y[i] - fit);
  }
  out.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;

  out.pair_slopes.resize(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i)
    out.pair_slopes[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  return out;
}

FitResult fit_exponent(const std::vector<ScalePoint>& samples) {
  if (samples.size() < 3)
    throw std::invalid_argument("fit_exponent: need >= 3 samples");
  std::vector<double> x, y, s;
  x.reserve(samples.size());
  for (const auto& p : samples) {
    if (!(p.estimate > 0.0))
      throw std::invalid_argument("fit_exponent: estimates must be positive");
    if (!(p.scale > 0.0))
      throw std::invalid_argument("fit_exponent: scales must be positive");
    x.push_back(std::log(p.scale));
    y.push_back(std::log(p.estimate));
    s.push_back(p.stderr_est > 0.0 ? p.stderr_est / p.estimate : 0.0);
  }
  FitResult out = weighted_linear_fit(x, y, s);
  out.method = "loglog-" + out.method;
  return out;
}

}  // namespace slelab::mc
