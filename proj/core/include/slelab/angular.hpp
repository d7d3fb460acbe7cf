#ifndef SLELAB_ANGULAR_HPP
#define SLELAB_ANGULAR_HPP

#include <cstdint>
#include <limits>
#include <vector>

#include "slelab/accumulator.hpp"
#include "slelab/loewner.hpp"
#include "slelab/rng.hpp"
#include "slelab/stats.hpp"

namespace slelab::angular {

/// Annulus-crossing exponent nu(kappa, b) = (8b + kappa - 4 +
/// sqrt((kappa-4)^2 + 16 b kappa)) / 16. kappa = 0 by continuous extension.
double nu(double kappa, double b);

/// Boundary exponent q(kappa, b) = (kappa - 4 + sqrt((kappa-4)^2 +
/// 16 b kappa)) / (2 kappa); the positive root of
/// kappa q^2 + (4 - kappa) q - 4 b = 0.
double q(double kappa, double b);

/// h*(x, t) = exp(-t nu) sin(x/2)^q; exact solution of dt h = Lambda h.
double h_star(double x, double t, double kappa, double b);

/// Central-difference residual of dt h* - Lambda h* at grid spacing h;
/// vanishes to O(h^2). Requires x in (4h, 2pi - 4h) and t >= h.
double generator_residual(double x, double t, double kappa, double b, double h);

struct AngularConfig {
  double kappa = 6.0;
  double b = 1.0;
  double dt = 1e-3;      // macro step; one driving increment each
  double eps_abs = 1e-6; // absorption threshold at the boundary
};

/// One trajectory of the angular diffusion with its derivative weight.
struct AngularSample {
  double x0 = 0.0;
  double kappa = 6.0;
  double b = 1.0;
  std::vector<double> times;
  std::vector<double> path;   // Y at macro steps (stride-decimated)
  double log_phi = 0.0;       // log Phi at the end (monotone non-increasing)
  double tau = std::numeric_limits<double>::quiet_NaN();
  bool absorbed = false;

  double weight() const;  // Phi^b, identically 0 after absorption
};

/**
 * Euler-Maruyama with noise applied once per macro step and the drift
 * integrated by sub-steps of size min(dt, dist^2/100) near the cot
 * singularity; the weight integral uses the trapezoid rule on the same
 * sub-steps. Coupled trajectories driven by one stream contract pathwise.
 */
AngularSample simulate_weighted(double x0, double t_horizon,
                                const AngularConfig& cfg,
                                rng::RandomStream& stream,
                                std::size_t path_stride = 0);

/// Coupled ensemble sharing one driving noise; members' drift sub-steps are
/// synchronized on the ensemble's minimal boundary distance.
struct EnsembleMember {
  double y = 0.0;
  double log_phi = 0.0;
  double tau = std::numeric_limits<double>::quiet_NaN();
  bool alive = true;
};

class CoupledEnsemble {
 public:
  CoupledEnsemble(std::vector<double> y0, const AngularConfig& cfg);
  /// One macro step driven by a standard normal draw.
  void step(double gauss);
  double t() const { return t_; }
  const std::vector<EnsembleMember>& members() const { return members_; }
  std::size_t alive_count() const;

 private:
  AngularConfig cfg_;
  std::vector<EnsembleMember> members_;
  double t_ = 0.0;
};

/// Monte Carlo estimate of f(x, t) = E[Phi_t^b 1{alive}] at each requested
/// time (sorted ascending, multiples of dt) from N paths.
std::vector<mc::Accumulator> estimate_f_times(double x0,
                                              const std::vector<double>& times,
                                              const AngularConfig& cfg,
                                              std::size_t n_paths,
                                              rng::RandomStream& stream);

mc::Accumulator estimate_f(double x0, double t, const AngularConfig& cfg,
                           std::size_t n_paths, rng::RandomStream& stream);

struct ArcLengthEstimate {
  std::vector<double> t_grid;
  std::vector<mc::Accumulator> moments;  // per-t accumulators of L_t^b
  mc::FitResult decay;                   // slope of log mean vs t
  std::size_t coarse_flagged = 0;  // paths fully absorbed before the first t
};

/**
 * E[(L_t)^b] with L_t the Riemann sum of the derivative weight over a
 * uniform grid of grid_x angles coupled through one driving path per
 * sample. Requires grid_x >= 64.
 */
ArcLengthEstimate estimate_arc_length_moment(double kappa, double b,
                                             const std::vector<double>& t_grid,
                                             std::size_t n_paths,
                                             std::size_t grid_x, double dt,
                                             rng::RandomStream& stream);

/// Same simulation accumulating several powers b at once.
std::vector<ArcLengthEstimate> estimate_arc_length_moments(
    double kappa, const std::vector<double>& bs,
    const std::vector<double>& t_grid, std::size_t n_paths, std::size_t grid_x,
    double dt, rng::RandomStream& stream);

/**
 * Proxy for the pi-extremal distance across the annulus at radius r:
 * -log L at capacity time t(r) = log(1/(8r)), from a radial run carrying a
 * uniform tracked-angle grid (snapshot at t(r), or the final state of a
 * hit-radius run). +infinity when the surviving arc is empty. The proxy is
 * two-sidedly equivalent to the true distance, not equal; consumers must
 * treat constants as empirical.
 */
double extremal_distance_proxy(const loewner::RadialRun& run, double r,
                               std::size_t grid_x);

/// t(r) = log(1/(8r)); the capacity time at which the proxy is read.
double proxy_time(double r);

}  // namespace slelab::angular

#endif
