#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "slelab/angular.hpp"
#include "slelab/excursion.hpp"
#include "slelab/extremal_length.hpp"
#include "slelab/loewner.hpp"

using namespace slelab;

namespace {
constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

TEST_CASE("excursion hitting mass closed form") {
  CHECK(excursion::excursion_mass_hitting(std::exp(-kTwoPi)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(excursion::excursion_mass_hitting(std::exp(-1.0)) ==
        doctest::Approx(kTwoPi).epsilon(1e-14));
  CHECK_THROWS_AS(excursion::excursion_mass_hitting(0.0), std::invalid_argument);
  CHECK_THROWS_AS(excursion::excursion_mass_hitting(1.0), std::invalid_argument);
}

TEST_CASE("annulus sampler reproduces the exact hitting mass") {
  rng::RandomStream stream(21, 0);
  double r = 0.1, s = 0.01, dt = 1e-4;
  auto acc = excursion::estimate_annulus_hitting_mass(r, s, dt, 150000, stream);
  double exact = excursion::excursion_mass_hitting(r);
  CHECK(std::fabs(acc.mean() - exact) < 3.0 * acc.stderr_mean());

  SUBCASE("halving s moves the estimate within combined error bars") {
    rng::RandomStream stream2(21, 1);
    auto acc2 =
        excursion::estimate_annulus_hitting_mass(r, s / 2.0, dt, 150000, stream2);
    double se = std::sqrt(acc.stderr_mean() * acc.stderr_mean() +
                          acc2.stderr_mean() * acc2.stderr_mean());
    CHECK(std::fabs(acc.mean() - acc2.mean()) < 3.0 * se);
  }

  SUBCASE("halving dt moves the estimate within combined error bars") {
    rng::RandomStream stream3(21, 2);
    auto acc3 =
        excursion::estimate_annulus_hitting_mass(r, s, dt / 2.0, 150000, stream3);
    double se = std::sqrt(acc.stderr_mean() * acc.stderr_mean() +
                          acc3.stderr_mean() * acc3.stderr_mean());
    CHECK(std::fabs(acc.mean() - acc3.mean()) < 3.0 * se);
  }
}

TEST_CASE("annulus hitting angle is uniform (KS at 1%)") {
  rng::RandomStream stream(22, 0);
  std::vector<double> angles;
  double r = 0.35, s = 0.05;
  for (int i = 0; i < 30000 && angles.size() < 600; ++i) {
    auto p = excursion::sample_annulus_excursion(r, s, 1e-4, stream);
    if (p.hit_inner) {
      double a = std::arg(p.end);
      angles.push_back((a < 0 ? a + kTwoPi : a) / kTwoPi);
    }
  }
  REQUIRE(angles.size() >= 200);
  std::sort(angles.begin(), angles.end());
  double d = 0.0;
  std::size_t n = angles.size();
  for (std::size_t i = 0; i < n; ++i) {
    double f = static_cast<double>(i + 1) / n;
    double f0 = static_cast<double>(i) / n;
    d = std::max(d, std::max(std::fabs(f - angles[i]), std::fabs(angles[i] - f0)));
  }
  // 1% critical value of the Kolmogorov statistic
  CHECK(d * std::sqrt(static_cast<double>(n)) < 1.63);
}

TEST_CASE("rectangle crossing mass decays like e^-L") {
  rng::RandomStream stream(23, 0);
  std::vector<double> Ls{1.0, 2.0, 3.0};
  std::vector<mc::ScalePoint> pts;
  std::vector<mc::Accumulator> accs;
  for (double L : Ls)
    accs.push_back(
        excursion::estimate_rectangle_crossing(L, 0.01, 60000, 1e-4, stream));
  std::vector<double> x, y, sig;
  for (std::size_t i = 0; i < Ls.size(); ++i) {
    REQUIRE(accs[i].mean() > 0.0);
    x.push_back(Ls[i]);
    y.push_back(std::log(accs[i].mean()));
    sig.push_back(accs[i].stderr_mean() / accs[i].mean());
  }
  auto fit = mc::weighted_linear_fit(x, y, sig);
  CHECK(fit.slope == doctest::Approx(-1.0).epsilon(0.12));

  SUBCASE("halving s at L=2 stays within combined error bars") {
    rng::RandomStream s1(23, 10), s2(23, 11);
    auto a = excursion::estimate_rectangle_crossing(2.0, 0.01, 60000, 1e-4, s1);
    auto b = excursion::estimate_rectangle_crossing(2.0, 0.005, 120000, 1e-4, s2);
    double se = std::sqrt(a.stderr_mean() * a.stderr_mean() +
                          b.stderr_mean() * b.stderr_mean());
    CHECK(std::fabs(a.mean() - b.mean()) < 3.0 * se);
  }

  SUBCASE("preconditions") {
    rng::RandomStream s(1, 0);
    CHECK_THROWS_AS(excursion::estimate_rectangle_crossing(0.5, 0.01, 10, 1e-4, s),
                    std::invalid_argument);
    CHECK_THROWS_AS(excursion::estimate_rectangle_crossing(2.0, 0.2, 10, 1e-4, s),
                    std::invalid_argument);
  }
}

TEST_CASE("harmonic-measure bound and simulation from a fixed point") {
  // Im(exp z) is harmonic: h_z(right edge) >= e^-L (Im exp(z) - 1) for
  // Re z = 1 whenever Im exp(z) > 1; check the series oracle and the
  // simulated crossing probability against it.
  double L = 3.0;
  std::complex<double> z(1.0, kPi / 2.0);
  double hz = excursion::rectangle_right_edge_harmonic_measure(z, L);
  double bound = std::exp(-L) * (std::exp(1.0) * std::sin(kPi / 2.0) - 1.0);
  CHECK(hz >= bound);

  rng::RandomStream stream(24, 0);
  mc::Accumulator acc;
  for (int i = 0; i < 60000; ++i) {
    auto p = excursion::sample_rectangle_excursion_from(z, L, 1e-4, stream);
    acc.add(p.crossed ? 1.0 : 0.0);
  }
  CHECK(std::fabs(acc.mean() - hz) < 3.5 * acc.stderr_mean());
  CHECK(acc.mean() >= bound - 3.0 * acc.stderr_mean());
}

TEST_CASE("grid mask text format round trip") {
  std::string text =
      "gridmask 6 3\n"
      "..##..\n"
      ".A##B.\n"
      "..##..\n";
  auto m = excursion::GridMask::parse(text);
  CHECK(m.width == 6);
  CHECK(m.height == 3);
  CHECK(m.at(1, 1) == 2);
  CHECK(m.at(4, 1) == 3);
  CHECK(m.at(2, 0) == 1);
  CHECK(m.serialize() == text);
  auto fine = m.refined();
  CHECK(fine.width == 12);
  CHECK(fine.at(2, 2) == 2);
  CHECK_THROWS_AS(excursion::GridMask::parse("bogus 2 2\n..\n..\n"),
                  std::invalid_argument);
}

TEST_CASE("pi-extremal distance of the rectangle is L") {
  for (double L : {1.0, 2.0, 3.0}) {
    double est = excursion::pi_extremal_distance_richardson(
        [&](int n) { return excursion::rectangle_mask(L, n); }, 256);
    CHECK(est == doctest::Approx(L).epsilon(0.01));
  }
}

TEST_CASE("pi-extremal distance of the annulus is log(1/r)/2") {
  for (double r : {0.2, 0.4}) {
    double est = excursion::pi_extremal_distance_richardson(
        [&](int n) { return excursion::annulus_mask(r, n); }, 256);
    CHECK(est == doctest::Approx(0.5 * std::log(1.0 / r)).epsilon(0.01));
  }
}

TEST_CASE("resistance distance is monotone under enlarging the region") {
  auto narrow = excursion::rectangle_mask(2.0, 32);
  // widen: duplicate the rows (conductance can only grow)
  excursion::GridMask wide = narrow;
  wide.height = narrow.height + 8;
  wide.cells.assign(static_cast<std::size_t>(wide.width) * wide.height, 0);
  for (int y = 0; y < narrow.height; ++y)
    for (int x = 0; x < narrow.width; ++x) wide.at(x, y) = narrow.at(x, y);
  for (int y = narrow.height; y < wide.height; ++y)
    for (int x = 0; x < wide.width; ++x)
      wide.at(x, y) = narrow.at(x, narrow.height - 1);
  CHECK(excursion::pi_extremal_distance(wide) <=
        excursion::pi_extremal_distance(narrow) + 1e-12);
}

TEST_CASE("degenerate masks rejected") {
  // touching arcs
  auto touching = excursion::GridMask::parse(
      "gridmask 4 1\n"
      ".AB.\n");
  CHECK_THROWS_AS(excursion::grid_resistance(touching), std::invalid_argument);
  auto no_arc = excursion::GridMask::parse(
      "gridmask 3 1\n"
      "A#A\n");
  CHECK_THROWS_AS(excursion::grid_resistance(no_arc), std::invalid_argument);
}

TEST_CASE("slit annulus: resistance distance vs arc-length proxy") {
  // kappa=0 hull [rho(t(r)), 1]: exp(-distance) and the arc-length proxy
  // are comparable with constants uniform in r. The constants themselves
  // are the product of two conformal-distortion factors and land near e^3.5
  // here; what the comparability claims is that the gap does not drift as
  // r -> 0, and that both sides grow like (1/2) log(1/r).
  std::vector<double> radii{1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0};
  std::vector<double> gaps;
  for (double r : radii) {
    loewner::RadialConfig cfg;
    cfg.kappa = 0.0;
    cfg.theta0 = 0.0;
    cfg.dt = 1e-3;
    cfg.snapshot_times = {angular::proxy_time(r)};
    std::vector<double> grid(256);
    for (int i = 0; i < 256; ++i) grid[i] = (i + 0.5) * kTwoPi / 256.0;
    rng::RandomStream stream(1, 0);
    auto run = loewner::simulate_radial(
        cfg, loewner::RadialStop::capacity(cfg.snapshot_times[0]), grid,
        stream);
    double proxy = angular::extremal_distance_proxy(run, r, 256);

    double t = cfg.snapshot_times[0];
    double e = 2.0 * std::exp(t) - 1.0;
    double slit_from = e - std::sqrt(e * e - 1.0);  // rho(t) of the slit
    double resist = excursion::pi_extremal_distance_richardson(
        [&](int n) { return excursion::slit_annulus_mask(r, slit_from, n); },
        192);
    CHECK(std::fabs(proxy - 0.5 * std::log(1.0 / r)) < 3.5);
    CHECK(std::fabs(resist - 0.5 * std::log(1.0 / r)) < 3.5);
    gaps.push_back(resist - proxy);
  }
  for (std::size_t i = 1; i < gaps.size(); ++i)
    CHECK(std::fabs(gaps[i] - gaps[0]) < 0.35);
}
