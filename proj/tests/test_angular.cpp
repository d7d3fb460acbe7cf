#include <doctest.h>

#include <cmath>

#include "slelab/angular.hpp"
#include "slelab/experiments.hpp"
#include "slelab/loewner.hpp"

using namespace slelab;

namespace {
constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

TEST_CASE("nu and q closed forms") {
  CHECK(angular::nu(6.0, 1.0) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(angular::nu(2.0, 1.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(angular::nu(6.0, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  for (double b : {0.5, 1.0, 3.0})
    CHECK(angular::nu(0.0, b) == doctest::Approx(0.5 * b).epsilon(1e-14));
  CHECK(angular::q(6.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(angular::q(6.0, 2.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(angular::nu(6.0, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(angular::q(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(angular::nu(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("nu and q re-substitute into their defining quadratic") {
  // q solves kappa q^2 + (4-kappa) q - 4b = 0 and nu = kappa q^2/8 + q/2.
  for (double kappa : {1.0, 2.0, 4.0, 6.0, 8.0})
    for (double b : {0.5, 1.0, 2.0, 10.0 / 3.0, 7.0}) {
      double qq = angular::q(kappa, b);
      CHECK(std::fabs(kappa * qq * qq + (4.0 - kappa) * qq - 4.0 * b) < 1e-12);
      CHECK(std::fabs(angular::nu(kappa, b) -
                      (kappa * qq * qq / 8.0 + qq / 2.0)) < 1e-12);
    }
}

TEST_CASE("h_star closed form") {
  for (double kappa : {2.0, 6.0})
    for (double b : {1.0, 2.0}) {
      CHECK(angular::h_star(kPi, 0.0, kappa, b) == doctest::Approx(1.0));
      CHECK(angular::h_star(0.0, 1.0, kappa, b) == 0.0);
      CHECK(angular::h_star(kTwoPi, 1.0, kappa, b) == 0.0);
      double nu = angular::nu(kappa, b);
      for (double x : {0.5, 1.5, kPi}) {
        double ratio = angular::h_star(x, 1.0, kappa, b) /
                       angular::h_star(x, 2.0, kappa, b);
        CHECK(ratio == doctest::Approx(std::exp(nu)).epsilon(1e-12));
      }
    }
  CHECK(angular::h_star(kPi / 2.0, 1.0, 6.0, 1.0) ==
        doctest::Approx(std::exp(-1.25) * std::sin(kPi / 4.0)).epsilon(1e-14));
  CHECK_THROWS_AS(angular::h_star(-0.1, 1.0, 6.0, 1.0), std::invalid_argument);
}

TEST_CASE("generator residual vanishes to second order") {
  double r1 = angular::generator_residual(kPi, 1.0, 6.0, 1.0, 1e-3);
  CHECK(std::fabs(r1) < 1e-4);
  double r2 = angular::generator_residual(kPi / 2.0, 2.0, 2.0, 3.0, 1e-3);
  CHECK(std::fabs(r2) < 1e-4);
  // halving h divides the residual by ~4
  double a = angular::generator_residual(1.1, 1.0, 6.0, 2.0, 2e-3);
  double b = angular::generator_residual(1.1, 1.0, 6.0, 2.0, 1e-3);
  CHECK(a / b > 3.0);
  CHECK(a / b < 5.0);
  CHECK_THROWS_AS(angular::generator_residual(3e-3, 1.0, 6.0, 1.0, 1e-3),
                  std::invalid_argument);
}

TEST_CASE("weight is 1 while alive when b=0; log_phi decays") {
  angular::AngularConfig cfg;
  cfg.kappa = 6.0;
  cfg.b = 0.0;
  cfg.dt = 1e-3;
  rng::RandomStream stream(3, 0);
  auto s = angular::simulate_weighted(kPi, 1.0, cfg, stream, 50);
  if (!s.absorbed) CHECK(s.weight() == 1.0);
  CHECK(s.log_phi <= 0.0);
  // absorbed path has exactly zero weight
  angular::AngularConfig cb = cfg;
  cb.b = 1.0;
  for (int p = 0; p < 200; ++p) {
    rng::RandomStream st(4, p);
    auto smp = angular::simulate_weighted(0.3, 2.0, cb, st);
    if (smp.absorbed) {
      CHECK(smp.weight() == 0.0);
      CHECK(smp.tau > 0.0);
      break;
    }
  }
}

TEST_CASE("coupled contraction holds pathwise") {
  experiments::McOptions opts;
  opts.seed = 12;
  opts.chunk_size = 8;
  auto res = experiments::contraction_suite(6.0, 48, 1.0, 1.1, 2.0, 1e-3, opts);
  CHECK(res.ok);
  CHECK(res.steps_checked > 1000);
  CHECK(res.worst_margin <= 0.0);
}

TEST_CASE("local martingale: mean of h*(Y_s, t-s) Phi_s^b constant in s") {
  angular::AngularConfig cfg;
  cfg.kappa = 6.0;
  cfg.b = 1.0;
  cfg.dt = 1e-3;
  const double t = 1.0;
  mc::Accumulator mid, end;
  const int n_paths = 6000;
  for (int p = 0; p < n_paths; ++p) {
    rng::RandomStream stream(71, p);
    angular::CoupledEnsemble ens({kPi}, cfg);
    std::size_t half = 500, full = 1000;
    for (std::size_t k = 0; k < full; ++k) {
      ens.step(stream.next_gaussian());
      const auto& m = ens.members()[0];
      if (k + 1 == half)
        mid.add(m.alive ? angular::h_star(m.y, t - ens.t(), 6.0, 1.0) *
                              std::exp(cfg.b * m.log_phi)
                        : 0.0);
      if (!m.alive) {
        if (k + 1 < half) mid.add(0.0);
        end.add(0.0);
        break;
      }
      if (k + 1 == full)
        end.add(angular::h_star(m.y, 0.0, 6.0, 1.0) *
                std::exp(cfg.b * m.log_phi));
    }
  }
  double h0 = angular::h_star(kPi, t, 6.0, 1.0);
  CHECK(std::fabs(mid.mean() - h0) < 3.0 * mid.stderr_mean());
  CHECK(std::fabs(end.mean() - h0) < 3.0 * end.stderr_mean());
}

TEST_CASE("estimate_f: sandwich and boundary decay") {
  angular::AngularConfig cfg;
  cfg.kappa = 6.0;
  cfg.b = 1.0;
  cfg.dt = 1e-3;
  rng::RandomStream stream(5, 0);
  auto at_pi = angular::estimate_f(kPi, 1.0, cfg, 4000, stream);
  double h = angular::h_star(kPi, 1.0, 6.0, 1.0);
  double ratio = at_pi.mean() / h;
  CHECK(ratio > 1.0 - 3.0 * at_pi.stderr_mean() / h);
  CHECK(ratio < 10.0);

  rng::RandomStream stream2(5, 1);
  auto near_zero = angular::estimate_f(1e-2, 1.0, cfg, 4000, stream2);
  CHECK(near_zero.mean() < at_pi.mean() / 10.0);
}

TEST_CASE("arc-length moments decay at rate nu (smoke)") {
  rng::RandomStream stream(9, 0);
  auto est = angular::estimate_arc_length_moment(6.0, 1.0, {0.5, 1.0, 1.5, 2.0},
                                                 3000, 64, 1e-3, stream);
  for (const auto& acc : est.moments) {
    CHECK(acc.mean() > 0.0);
    CHECK(acc.mean() <= kTwoPi);
  }
  CHECK(est.decay.slope < -0.9);
  CHECK(est.decay.slope > -1.6);
  // hulls occasionally wrap the whole circle early; the flag counts them
  CHECK(est.coarse_flagged <= 10);
  CHECK_THROWS_AS(angular::estimate_arc_length_moment(6.0, 1.0, {1.0}, 10, 32,
                                                      1e-3, stream),
                  std::invalid_argument);
}

TEST_CASE("sandwich holds for b=2 with one global constant") {
  experiments::McOptions opts;
  opts.seed = 75;
  opts.workers = 2;
  auto res = experiments::sandwich(6.0, 2.0, {kPi / 2.0, kPi}, {1.0, 2.0},
                                   20000, 1e-3, opts);
  double c_global = 0.0;
  for (const auto& c : res.cells) {
    CHECK(c.ratio >= 1.0 - 3.0 * c.stderr_f / c.h_star);
    c_global = std::max(c_global, c.ratio);
  }
  CHECK(c_global < 10.0);
}

TEST_CASE("fitted decay rate recovers nu(2,1) = 3/4") {
  experiments::McOptions opts;
  opts.seed = 74;
  opts.workers = 2;
  auto res = experiments::nu_estimate(2.0, {1.0}, {1.0, 1.5, 2.0, 2.5}, 20000,
                                      64, 1e-3, opts);
  CHECK(res[0].fit.slope == doctest::Approx(-0.75).epsilon(0.08 / 0.75));
}

TEST_CASE("proxy at r near the domain edge: small distance, arc near 2pi") {
  loewner::RadialConfig cfg;
  cfg.kappa = 0.0;
  cfg.theta0 = 0.0;
  cfg.dt = 1e-4;
  double r = 0.124;  // t(r) = log(1/(8r)) barely positive
  cfg.snapshot_times = {angular::proxy_time(r)};
  std::vector<double> grid(256);
  for (int i = 0; i < 256; ++i) grid[i] = (i + 0.5) * kTwoPi / 256.0;
  rng::RandomStream stream(1, 0);
  auto run = loewner::simulate_radial(
      cfg, loewner::RadialStop::capacity(cfg.snapshot_times[0]), grid, stream);
  double proxy = angular::extremal_distance_proxy(run, r, 256);
  CHECK(proxy < 0.0);                   // L exceeds 1: "distance" is tiny
  CHECK(std::exp(-proxy) > 5.5);        // surviving arc close to 2 pi
  CHECK(std::exp(-proxy) <= kTwoPi + 1e-9);
  CHECK_THROWS_AS(angular::proxy_time(0.2), std::invalid_argument);
}

TEST_CASE("extremal distance proxy on the kappa=0 slit") {
  // Deterministic evolution: L_{t(r)} ~ e^{-t(r)/2}, so the proxy grows like
  // (1/2) log(1/r) + O(1) and the log-log slope against 1/r is -nu(0,1).
  loewner::RadialConfig cfg;
  cfg.kappa = 0.0;
  cfg.theta0 = 0.0;
  cfg.dt = 1e-3;
  std::vector<double> radii{1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128};
  for (double r : radii) cfg.snapshot_times.push_back(angular::proxy_time(r));
  std::vector<double> grid(256);
  for (int i = 0; i < 256; ++i) grid[i] = (i + 0.5) * kTwoPi / 256.0;
  rng::RandomStream stream(1, 0);
  auto run = loewner::simulate_radial(
      cfg, loewner::RadialStop::capacity(cfg.snapshot_times.back()), grid,
      stream);
  std::vector<mc::ScalePoint> pts;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    double proxy = angular::extremal_distance_proxy(run, radii[i], 256);
    // L_{t(r)} = 2pi - 4 acos(sqrt(8r)) exactly here, so the proxy sits at
    // 0.5 log(1/r) - log(4 sqrt 8) + o(1).
    double offset = proxy - 0.5 * std::log(1.0 / radii[i]);
    CHECK(offset > -2.8);
    CHECK(offset < -2.2);
    pts.push_back({1.0 / radii[i], std::exp(-proxy), 0.0});
  }
  auto fit = mc::fit_exponent(pts);
  CHECK(fit.slope == doctest::Approx(-0.5).epsilon(0.05));
}
