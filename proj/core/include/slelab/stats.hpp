#ifndef SLELAB_STATS_HPP
#define SLELAB_STATS_HPP

#include <string>
#include <vector>

namespace slelab::mc {

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double r_squared = 0.0;
  std::string method;
  /// Slopes of adjacent sample pairs; drift across them flags finite-size bias.
  std::vector<double> pair_slopes;
};

/// One point of a power-law estimate: value `estimate` (+/- stderr) at `scale`.
struct ScalePoint {
  double scale = 0.0;
  double estimate = 0.0;
  double stderr_est = 0.0;
};

/// Weighted least squares of y on x with per-point sigma (0 => unweighted),
/// jackknife slope error (leave-one-point-out).
FitResult weighted_linear_fit(const std::vector<double>& x,
                              const std::vector<double>& y,
                              const std::vector<double>& sigma);

/// Log-log power-law fit of estimate ~ scale^slope. Requires >= 3 points,
/// positive estimates. sigma in log space is stderr/estimate.
FitResult fit_exponent(const std::vector<ScalePoint>& samples);

}  // namespace slelab::mc

#endif
