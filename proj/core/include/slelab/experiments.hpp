#ifndef SLELAB_EXPERIMENTS_HPP
#define SLELAB_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "slelab/accumulator.hpp"
#include "slelab/stats.hpp"

namespace slelab::experiments {

/// Chunked-seeding layout: trial chunk c runs on RandomStream(seed,
/// stream_base + c), and chunk results merge in chunk order, so results do
/// not depend on the worker count.
struct McOptions {
  std::uint64_t seed = 20260810;
  std::uint64_t stream_base = 0;
  std::size_t chunk_size = 1024;
  int workers = 0;  // 0 = SLELAB_WORKERS / hardware default
};

// ---------------------------------------------------------------------------
// Harmonic-measure decay E[(L_t)^b] ~ exp(-nu t).
// ---------------------------------------------------------------------------
struct NuEstimateResult {
  double kappa = 6.0;
  double b = 1.0;
  std::vector<double> t_grid;
  std::vector<mc::Accumulator> moments;
  mc::FitResult fit;  // slope of log mean vs t
  std::size_t coarse_flagged = 0;
};

std::vector<NuEstimateResult> nu_estimate(double kappa,
                                          const std::vector<double>& bs,
                                          const std::vector<double>& t_grid,
                                          std::size_t paths, std::size_t grid_x,
                                          double dt, const McOptions& opts);

// ---------------------------------------------------------------------------
// Derivative-expectation sandwich f(x,t) vs h*(x,t).
// ---------------------------------------------------------------------------
struct SandwichCell {
  double x = 0.0;
  double t = 0.0;
  double f_hat = 0.0;
  double stderr_f = 0.0;
  double h_star = 0.0;
  double ratio = 0.0;
};

struct SandwichResult {
  double kappa = 6.0, b = 1.0;
  std::vector<SandwichCell> cells;
};

SandwichResult sandwich(double kappa, double b, const std::vector<double>& xs,
                        const std::vector<double>& ts,
                        std::size_t paths_per_cell, double dt,
                        const McOptions& opts);

// ---------------------------------------------------------------------------
// Cardy crossing Monte Carlo against the hypergeometric values.
// ---------------------------------------------------------------------------
struct CardyMcResult {
  double theta = 0.5, alpha = 0.0;
  std::size_t runs = 0;
  double p_first = 0.0;      // E' race (target w4): w2 image swallowed first
  double se_first = 0.0;
  double g_cprime = 0.0;     // target G(c')
  bool with_joint = false;
  double p_dprime = 0.0;     // E'' race (target w3): w2 image swallowed first
  double se_dprime = 0.0;
  double g_cdprime = 0.0;    // target G(c'')
  double p_joint = 0.0;      // P[E' race] - P[E'' race]
  double se_joint = 0.0;
  double target_joint = 0.0; // G(c') - G(c'')
  // Direct frequency of the stopped-hull crossing event. It exceeds the
  // G-difference by the mass of simultaneous touches (the trace jumping
  // onto the target arc past the shared endpoint), which the difference
  // identity does not count; reported for the record, not asserted.
  double p_direct = 0.0;
  double se_direct = 0.0;
  std::size_t undecided = 0;
  double dt = 1e-4;
};

CardyMcResult cardy_mc(double theta, double alpha, std::size_t runs, double dt,
                       const McOptions& opts, bool with_joint = false);

// ---------------------------------------------------------------------------
// Rectangle crossing mass mu[E_L] ~ e^-L.
// ---------------------------------------------------------------------------
struct RectangleSlopeResult {
  std::vector<double> L_grid;
  std::vector<mc::Accumulator> mass;
  mc::FitResult fit;  // slope of log mass vs L (semi-log)
  double s = 0.01;
  double dt = 1e-4;
};

RectangleSlopeResult rectangle_slope(const std::vector<double>& Ls,
                                     std::size_t per_L, double s, double dt,
                                     const McOptions& opts);

// ---------------------------------------------------------------------------
// Lattice walk non-intersection exponents.
// ---------------------------------------------------------------------------
struct WalkTimeResult {
  int n = 1, m = 1;
  std::vector<std::size_t> k_grid;
  std::vector<mc::Accumulator> prob;
  mc::FitResult fit;  // log p vs log k
};

WalkTimeResult walk_time(int n, int m, const std::vector<std::size_t>& k_grid,
                         std::size_t trials, const McOptions& opts);

struct WalkRadialResult {
  int n = 1, m = 1;
  std::vector<double> radii;
  std::vector<mc::Accumulator> prob;
  mc::FitResult fit;  // log p vs log R
};

WalkRadialResult walk_radial(int n, int m, const std::vector<double>& radii,
                             std::size_t trials, const McOptions& opts);

struct WalkDimensionsResult {
  std::size_t steps = 0;
  std::size_t walks = 0;
  std::vector<int> scales;
  std::vector<mc::Accumulator> cut_counts;       // box counts per scale
  std::vector<mc::Accumulator> frontier_counts;
  mc::FitResult cut_fit;
  mc::FitResult frontier_fit;
};

WalkDimensionsResult walk_dimensions(std::size_t steps, std::size_t walks,
                                     const std::vector<int>& scales,
                                     const McOptions& opts);

// ---------------------------------------------------------------------------
// Universality experiment: SLE_6 hull (x) excursion avoidance mass, two ways.
// ---------------------------------------------------------------------------
struct UniversalityResult {
  std::vector<double> radii;
  std::vector<mc::Accumulator> route_i;   // E[exp(-L_proxy)] = E[L_{t(r)}]
  std::vector<mc::Accumulator> route_ii;  // E[mu_hat(E_{L_proxy})]
  mc::FitResult fit_i;   // log mass vs log(1/r); slope ~ -5/4
  mc::FitResult fit_ii;
  double slope_diff = 0.0;
  double slope_diff_se = 0.0;  // paired jackknife over hull chunks (+ curve term)
  RectangleSlopeResult rect;   // fitted crossing-mass curve used by route ii
};

UniversalityResult universality(const std::vector<double>& radii,
                                std::size_t paths, std::size_t grid_x,
                                double dt_sle,
                                const std::vector<double>& rect_Ls,
                                std::size_t rect_per_L, double rect_s,
                                double rect_dt, const McOptions& opts);

// ---------------------------------------------------------------------------
// Pathwise property suites.
// ---------------------------------------------------------------------------
struct KoebeSuiteResult {
  std::size_t hulls = 0;
  std::size_t checks = 0;
  std::size_t violations = 0;
  double min_lower_ratio = 1e300;  // min over checks of rho_hat / (e^-t/4)
  double max_upper_ratio = 0.0;    // max over checks of rho_hat / e^-t
  bool hit_times_bracketed = true; // T(r) in (log(1/r) - log 4, log(1/r)]
  double upper_slack = 0.0;        // allowed discretization slack used
};

KoebeSuiteResult koebe_suite(double kappa, double r, std::size_t hulls,
                             double dt, const McOptions& opts);

struct ContractionSuiteResult {
  std::size_t pairs = 0;
  std::size_t steps_checked = 0;
  bool ok = true;
  double worst_margin = 0.0;  // max over steps of |dY| - |x-y| e^{-t/2}
};

ContractionSuiteResult contraction_suite(double kappa, std::size_t pairs,
                                         double x0, double y0, double t_max,
                                         double dt, const McOptions& opts);

}  // namespace slelab::experiments

#endif
