#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "slelab/accumulator.hpp"
#include "slelab/coordinate_change.hpp"
#include "slelab/experiments.hpp"
#include "slelab/loewner.hpp"

using namespace slelab;

namespace {
constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kTwoPi = 2.0 * kPi;

// rho(t) of the kappa=0 radial slit: log((1+x)^2/(4x)) = t inverted.
double slit_rho(double t) {
  double e = 2.0 * std::exp(t) - 1.0;
  return e - std::sqrt(e * e - 1.0);
}
}  // namespace

TEST_CASE("exact radial step formulas against quadrature references") {
  // One step of capacity tau = 0.3 from relative angle y = 2; the reference
  // values come from high-precision ODE/quadrature runs.
  double y1 = loewner::radial_flow_angle(2.0, 0.3);
  CHECK(y1 == doctest::Approx(2.1742274086418753).epsilon(1e-14));
  double dlp = loewner::radial_flow_dlogphi(2.0, 0.3);
  CHECK(dlp == doctest::Approx(-0.20076188258956428).epsilon(1e-13));
  // flow fixes pi and contracts toward it
  CHECK(loewner::radial_flow_angle(kPi, 0.5) == doctest::Approx(kPi));
  CHECK(loewner::radial_flow_angle(1.0, 0.5) > 1.0);
  CHECK(loewner::radial_flow_angle(5.0, 0.5) < 5.0);
}

TEST_CASE("capacity identity of the elementary maps") {
  rng::RandomStream stream(5, 0);
  loewner::RadialConfig cfg;
  cfg.kappa = 6.0;
  cfg.dt = 1e-3;
  auto run = loewner::simulate_radial(cfg, loewner::RadialStop::capacity(0.2),
                                      {}, stream);
  CHECK(run.state.t == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(loewner::capacity_identity_residual(run.driving, 64) < 1e-12);
}

TEST_CASE("kappa=0 radial evolution is the closed-form slit") {
  loewner::RadialConfig cfg;
  cfg.kappa = 0.0;
  cfg.theta0 = 0.0;
  cfg.dt = 1e-3;
  cfg.track_rho = true;
  rng::RandomStream stream(1, 0);

  SUBCASE("tip follows rho(t) = slit endpoint") {
    auto run = loewner::simulate_radial(cfg, loewner::RadialStop::capacity(1.0),
                                        {}, stream);
    auto tip = loewner::radial_tip(run.driving, run.driving.values.size() - 1);
    CHECK(std::fabs(tip.imag()) < 1e-9);
    CHECK(tip.real() == doctest::Approx(slit_rho(1.0)).epsilon(1e-6));
  }

  SUBCASE("hit-radius stop matches T(r) = log((1+r)^2/(4r))") {
    double r = 0.05;
    auto run = loewner::simulate_radial(cfg, loewner::RadialStop::hit_radius(r),
                                        {}, stream);
    double T = loewner::hull_hit_time(run, r);
    double T_exact = std::log((1.0 + r) * (1.0 + r) / (4.0 * r));
    CHECK(T == doctest::Approx(T_exact).epsilon(2e-3));
    // Koebe/Schwarz bracket
    CHECK(T <= std::log(1.0 / r) + 1e-12);
    CHECK(T > std::log(1.0 / r) - std::log(4.0) - 1e-12);
  }

  SUBCASE("dt refinement changes T(r) below the discretization tolerance") {
    double r = 0.1;
    auto run1 = loewner::simulate_radial(
        cfg, loewner::RadialStop::hit_radius(r), {}, stream);
    loewner::RadialConfig fine = cfg;
    fine.dt = 5e-4;
    auto run2 = loewner::simulate_radial(
        fine, loewner::RadialStop::hit_radius(r), {}, stream);
    CHECK(std::fabs(run1.state.hit_time - run2.state.hit_time) < 2.0 * cfg.dt);
  }

  SUBCASE("r -> 1-: T(r) -> 0") {
    auto run = loewner::simulate_radial(
        cfg, loewner::RadialStop::hit_radius(0.95), {}, stream);
    CHECK(run.state.hit_time < 0.05);
  }

  SUBCASE("budget exhaustion reported explicitly") {
    loewner::RadialConfig tiny = cfg;
    tiny.max_steps = 10;
    CHECK_THROWS_AS(loewner::simulate_radial(
                        tiny, loewner::RadialStop::hit_radius(0.05), {}, stream),
                    loewner::BudgetExhausted);
  }
}

TEST_CASE("radial driving increments have variance kappa dt") {
  loewner::RadialConfig cfg;
  cfg.kappa = 3.7;
  cfg.dt = 1e-3;
  mc::Accumulator acc;
  for (int p = 0; p < 50; ++p) {
    rng::RandomStream stream(17, p);
    auto run = loewner::simulate_radial(cfg, loewner::RadialStop::capacity(1.0),
                                        {}, stream);
    for (std::size_t k = 1; k < run.driving.values.size(); ++k) {
      double d = run.driving.values[k] - run.driving.values[k - 1];
      acc.add(d * d);
    }
  }
  // mean square increment = kappa dt, 5 sigma band
  double rel = acc.stderr_mean() / acc.mean();
  CHECK(acc.mean() ==
        doctest::Approx(cfg.kappa * cfg.dt).epsilon(5.0 * rel + 1e-3));
}

TEST_CASE("kappa=6 hulls: Koebe sandwich and hit-time bracket") {
  experiments::McOptions opts;
  opts.seed = 99;
  opts.chunk_size = 16;
  auto res = experiments::koebe_suite(6.0, 0.05, 64, 1e-3, opts);
  CHECK(res.hulls == 64);
  CHECK(res.violations == 0);
  CHECK(res.hit_times_bracketed);
  CHECK(res.min_lower_ratio >= 1.0);  // rho_hat >= e^-t / 4 exactly
  CHECK(res.max_upper_ratio <= 1.0 + res.upper_slack);
}

TEST_CASE("chordal kappa=0: vertical slit closed form") {
  loewner::ChordalConfig cfg;
  cfg.kappa = 0.0;
  cfg.delta0 = 0.0;
  cfg.dt = 1e-3;
  rng::RandomStream stream(2, 0);
  std::vector<double> pts{0.5, 1.0, 2.0, -1.5};
  auto run = loewner::simulate_chordal(cfg, 1.0, pts, stream);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double x = pts[i];
    double expect = std::copysign(std::sqrt(x * x + 4.0 * run.t), x);
    CHECK(run.points[i].alive);  // kappa=0 swallows no off-origin point
    CHECK(run.points[i].y == doctest::Approx(expect).epsilon(1e-12));
  }
  auto ord = loewner::first_swallowed(run);
  CHECK_FALSE(ord.decided);  // horizon reached with no swallow: reported
  CHECK(ord.events.size() == pts.size());
}

TEST_CASE("chordal kappa=6: reflection symmetry of first swallow") {
  // First-swallow times are heavy-tailed (Bessel dimension 5/3), so a fixed
  // horizon leaves a genuine undecided fraction; the symmetric setup keeps
  // the decided runs exactly fair.
  loewner::ChordalConfig cfg;
  cfg.kappa = 6.0;
  cfg.dt = 2e-4;
  mc::Accumulator acc;
  std::size_t undecided = 0;
  const int n = 10000;
  for (int p = 0; p < n; ++p) {
    rng::RandomStream stream(31, p);
    auto run = loewner::simulate_chordal(cfg, 40.0, {-1.0, 1.0}, stream,
                                         loewner::ChordalStopRule::AnySwallowed);
    auto ord = loewner::first_swallowed(run);
    if (!ord.decided) {
      ++undecided;
      continue;
    }
    acc.add(ord.events[0].x0 == 1.0 ? 1.0 : 0.0);
  }
  CHECK(static_cast<double>(undecided) / n < 0.12);
  CHECK(std::fabs(acc.mean() - 0.5) < 3.0 * acc.stderr_mean());
}

TEST_CASE("chordal driving quadratic variation is kappa t") {
  loewner::ChordalConfig cfg;
  cfg.kappa = 6.0;
  cfg.dt = 1e-3;
  mc::Accumulator qv;
  for (int p = 0; p < 1000; ++p) {
    rng::RandomStream stream(47, p);
    auto run = loewner::simulate_chordal(cfg, 1.0, {}, stream);
    double acc = 0.0;
    for (std::size_t k = 1; k < run.driving.values.size(); ++k) {
      double d = run.driving.values[k] - run.driving.values[k - 1];
      acc += d * d;
    }
    qv.add(acc);
  }
  CHECK(std::fabs(qv.mean() - 6.0) / 6.0 < 0.05);
}

TEST_CASE("chordal tracked points preserve ordering while alive") {
  loewner::ChordalConfig cfg;
  cfg.kappa = 6.0;
  cfg.dt = 5e-4;
  for (int p = 0; p < 20; ++p) {
    rng::RandomStream stream(41, p);
    std::vector<double> pts{-2.0, -1.0, -0.25, 0.4, 1.3, 3.1};
    auto run = loewner::simulate_chordal(cfg, 0.5, pts, stream);
    double prev = -1e300;
    for (const auto& tp : run.points) {
      if (!tp.alive) continue;
      CHECK(tp.y > prev);
      prev = tp.y;
    }
  }
}

TEST_CASE("coordinate change: exact one-step integrals") {
  // Single step of tau = 0.3 with constant driving; theta0 chosen so the
  // tracked point 1 sits at relative angle 2. References from quadrature.
  loewner::DrivingPath d;
  d.kappa = 6.0;
  d.dt = 0.3;
  double theta0 = kTwoPi - 2.0;
  d.values = {theta0, theta0};
  auto cc = loewner::radial_to_chordal(d, theta0);
  REQUIRE(cc.t.size() == 2);
  CHECK(cc.a[0] == 1.0);
  CHECK(cc.b[0] == 0.0);
  CHECK(cc.u[0] == 0.0);
  CHECK(cc.gamma[0] == doctest::Approx(1.0 / std::tan(1.0)).epsilon(1e-14));
  CHECK(std::abs(cc.e[0] - std::complex<double>(1.0, 0.0)) < 1e-12);
  CHECK(cc.a[1] == doctest::Approx(0.8181072139336418).epsilon(1e-13));
  CHECK(cc.b[1] == doctest::Approx(-0.10617020234152642).epsilon(1e-13));
  CHECK(cc.u[1] == doctest::Approx(0.11112464217268724).epsilon(1e-13));
}

TEST_CASE("coordinate change along kappa=6 paths") {
  // Pathwise: a <= 1 non-increasing, du > 0; statistically: beta driftless
  // with quadratic variation kappa * u up to the 10th percentile of
  // truncation clock values.
  mc::Accumulator drift;
  std::vector<loewner::CoordinateChange> ccs;
  const int n_paths = 400;
  for (int p = 0; p < n_paths; ++p) {
    rng::RandomStream stream(53, p);
    loewner::RadialConfig cfg;
    cfg.kappa = 6.0;
    cfg.theta0 = kPi;
    cfg.dt = 1e-3;
    auto run = loewner::simulate_radial(cfg, loewner::RadialStop::capacity(1.0),
                                        {}, stream);
    auto cc = loewner::radial_to_chordal(run.driving, cfg.theta0);
    REQUIRE(cc.t.size() >= 2);
    for (std::size_t i = 1; i < cc.t.size(); ++i) {
      CHECK(cc.a[i] <= cc.a[i - 1] + 1e-15);
      CHECK(cc.a[i] <= 1.0 + 1e-15);
      CHECK(cc.u[i] >= cc.u[i - 1]);
      drift.add(cc.beta[i] - cc.beta[i - 1]);
    }
    for (double du : cc.du) CHECK(du > 0.0);
    ccs.push_back(std::move(cc));
  }
  // drift of beta vanishes for kappa = 6 (3 sigma)
  CHECK(std::fabs(drift.mean()) < 3.0 * drift.stderr_mean() + 1e-6);

  // u* = 10th percentile of final clock values; QV(beta) on [0, u*] ~ 6 u*.
  std::vector<double> finals;
  for (const auto& cc : ccs) finals.push_back(cc.u.back());
  std::vector<double> sorted = finals;
  std::sort(sorted.begin(), sorted.end());
  double u_star = sorted[n_paths / 10];
  REQUIRE(u_star > 0.0);
  mc::Accumulator qv_ratio;
  for (const auto& cc : ccs) {
    if (cc.u.back() < u_star) continue;
    double qv = 0.0;
    std::size_t i = 1;
    for (; i < cc.u.size() && cc.u[i] <= u_star; ++i) {
      double db = cc.beta[i] - cc.beta[i - 1];
      qv += db * db;
    }
    if (cc.u[i - 1] > 0.0) qv_ratio.add(qv / (6.0 * cc.u[i - 1]));
  }
  CHECK(qv_ratio.mean() > 0.95);
  CHECK(qv_ratio.mean() < 1.05);
}

TEST_CASE("swallowed angles never revive; log-derivative decays") {
  loewner::RadialConfig cfg;
  cfg.kappa = 6.0;
  cfg.dt = 1e-3;
  cfg.snapshot_times = {0.25, 0.5, 0.75, 1.0};
  rng::RandomStream stream(7, 3);
  std::vector<double> grid;
  for (int i = 1; i <= 16; ++i) grid.push_back(kTwoPi * i / 17.0);
  auto run = loewner::simulate_radial(cfg, loewner::RadialStop::capacity(1.0),
                                      grid, stream);
  REQUIRE(run.snapshots.size() >= 4);
  for (std::size_t s = 1; s < run.snapshots.size(); ++s)
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!run.snapshots[s - 1].angles[i].alive)
        CHECK_FALSE(run.snapshots[s].angles[i].alive);
      if (run.snapshots[s].angles[i].alive)
        CHECK(run.snapshots[s].angles[i].log_phi <=
              run.snapshots[s - 1].angles[i].log_phi + 1e-15);
    }
}
