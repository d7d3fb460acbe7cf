#ifndef SLELAB_LOEWNER_HPP
#define SLELAB_LOEWNER_HPP

#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "slelab/rng.hpp"

namespace slelab::loewner {

/// Stop rule could not be reached within the configured step budget.
class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// Discretized Brownian driving function. For the radial evolution `values`
/// are angles theta_k (the driving point is exp(i theta_k)); for the chordal
/// evolution they are reals W_k. values[k] drives the step [k dt, (k+1) dt).
struct DrivingPath {
  double kappa = 6.0;
  double dt = 1e-3;
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

// ---------------------------------------------------------------------------
// Exact elementary maps for piecewise-constant driving.
//
// Radial step of capacity tau with driving frozen at angle 0 acts on the
// boundary as cos(y'/2) = e^{-tau/2} cos(y/2), where y is the angle of a
// tracked image point relative to the driving value. The accompanying
// derivative weight integrates in closed form.
// ---------------------------------------------------------------------------

/// Boundary angle after a radial step of capacity tau (exact flow).
double radial_flow_angle(double y, double tau);

/// Increment of log|g'| for a boundary point at relative angle y under a
/// radial step of capacity tau (exact integral of the log-derivative flow).
double radial_flow_dlogphi(double y, double tau);

/// m(z) = z / (1+z)^2; the radial slit map satisfies m(G_tau(z)) = e^tau m(z).
std::complex<double> koebe_m(std::complex<double> z);

/// Inverse radial slit step in the driving frame: w at capacity t+tau back to
/// capacity t. Valid for w in the closed unit disk.
std::complex<double> radial_step_inverse(std::complex<double> w, double tau);

struct TrackedAngle {
  double x0 = 0.0;      // initial absolute boundary angle
  double y = 0.0;       // current angle relative to the driving value
  double log_phi = 0.0; // log |g_t'(e^{i x0})|
  double tau = std::numeric_limits<double>::quiet_NaN(); // swallow time
  bool alive = true;
};

struct RhoCheck {
  double t = 0.0;
  double rho_hat = 1.0;  // running min of sampled tip moduli up to t
};

struct RadialSnapshot {
  double t = 0.0;
  std::vector<TrackedAngle> angles;
};

struct RadialHullState {
  double t = 0.0;
  std::vector<TrackedAngle> angles;
  double rho_hat = 1.0;
  std::vector<RhoCheck> rho_checks;
  double hit_time = std::numeric_limits<double>::quiet_NaN();
  bool budget_exhausted = false;
};

struct RadialConfig {
  double kappa = 6.0;
  double theta0 = 0.0;
  double dt = 1e-3;
  double eps_swallow = 1e-9;
  std::uint64_t max_steps = 100000000;
  bool track_rho = false;         // sample tips at capacity checkpoints
  double rho_check_spacing = 0.25;
  std::vector<double> snapshot_times;  // rounded to the step grid
};

struct RadialStop {
  enum class Kind { CapacityTime, HitRadius };
  Kind kind = Kind::CapacityTime;
  double t_max = 1.0;
  double r = 0.1;
  static RadialStop capacity(double t) {
    RadialStop s;
    s.kind = Kind::CapacityTime;
    s.t_max = t;
    return s;
  }
  static RadialStop hit_radius(double r) {
    RadialStop s;
    s.kind = Kind::HitRadius;
    s.r = r;
    return s;
  }
};

struct RadialRun {
  DrivingPath driving;
  RadialHullState state;
  std::vector<RadialSnapshot> snapshots;
};

/**
 * Radial SLE_kappa in the unit disk by exact slit-map composition, one
 * elementary map per dt step. Tracked boundary angles evolve by the exact
 * angular flow and are swallowed when the jump of the driving value crosses
 * them (or approaches within eps_swallow).
 *
 * With a HitRadius stop the trace tip is evaluated every step once the
 * Koebe bound allows the hull to reach radius r, and the run stops at the
 * first step with min |tip| <= r. Throws BudgetExhausted if the stop rule
 * is not reached within max_steps.
 */
RadialRun simulate_radial(const RadialConfig& cfg, const RadialStop& stop,
                          const std::vector<double>& tracked_angles,
                          rng::RandomStream& stream);

/// Tip of the trace after k steps: g_{t_k}^{-1}(delta_{t_k}).
std::complex<double> radial_tip(const DrivingPath& d, std::size_t k);

/// Capacity time T(r) recorded by a hit-radius run.
double hull_hit_time(const RadialRun& run, double r);

/// Riemann sum of the derivative weight over surviving grid angles: the
/// length of g_t(A_t) when the angles form a uniform grid of size grid_x.
double arc_length_from_angles(const std::vector<TrackedAngle>& angles,
                              std::size_t grid_x);

/// Max residual of the per-step capacity identity e^dt m(G^-1(w)) = m(w)
/// over probe points; exactness check of the elementary map composition.
double capacity_identity_residual(const DrivingPath& d, std::size_t n_probes);

// ---------------------------------------------------------------------------
// Chordal evolution in the upper half-plane.
// ---------------------------------------------------------------------------

struct TrackedPoint {
  double x0 = 0.0;   // initial boundary point
  double y = 0.0;    // current image under the flow
  double tau = std::numeric_limits<double>::quiet_NaN();
  int swallow_step = -1;
  bool alive = true;
};

struct ChordalConfig {
  double kappa = 6.0;
  double delta0 = 0.0;
  double dt = 1e-4;
  double eps_swallow = 1e-9;
  std::uint64_t max_steps = 100000000;
};

enum class ChordalStopRule { Horizon, AnySwallowed, AllSwallowed };

struct ChordalRun {
  DrivingPath driving;
  double t = 0.0;
  std::vector<TrackedPoint> points;
  bool budget_exhausted = false;
};

/**
 * Chordal SLE_kappa with exact vertical-slit elementary maps
 * (y' = W + sign(y-W) sqrt((y-W)^2 + 4 dt) per step). A tracked point is
 * swallowed when the driving jump crosses its image or lands within
 * eps_swallow of it.
 */
ChordalRun simulate_chordal(const ChordalConfig& cfg, double t_max,
                            const std::vector<double>& tracked_points,
                            rng::RandomStream& stream,
                            ChordalStopRule stop = ChordalStopRule::Horizon);

struct SwallowEvent {
  double x0 = 0.0;
  double tau = std::numeric_limits<double>::infinity();
  int step = -1;
  bool swallowed = false;
};

struct SwallowOrdering {
  std::vector<SwallowEvent> events;  // sorted by swallow time, alive last
  bool decided = false;              // at least one point swallowed
};

/// Ordering of swallow events of the run's tracked points. Points alive at
/// the horizon are reported as such rather than silently dropped.
SwallowOrdering first_swallowed(const ChordalRun& run);

}  // namespace slelab::loewner

#endif
