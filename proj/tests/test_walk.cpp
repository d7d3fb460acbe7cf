#include <doctest.h>

#include <cmath>

#include "slelab/experiments.hpp"
#include "slelab/walk.hpp"

using namespace slelab;

namespace {

// Build a LatticePath from explicit positions (test construction helper).
walk::LatticePath make_path(const std::vector<walk::Site>& positions) {
  walk::LatticePath p;
  p.positions = positions;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    auto [it, fresh] = p.site_index.try_emplace(
        walk::site_key(positions[i].x, positions[i].y),
        walk::VisitSpan{static_cast<int>(i), static_cast<int>(i)});
    if (!fresh) it->second.last = static_cast<int>(i);
  }
  return p;
}

// 4x4 enumeration of one-step pairs from (0,0) and (1,0): the traces
// {(0,0), s} and {(1,0), s'} are disjoint in 9 of 16 configurations.
double one_step_pair_oracle() {
  const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
  int disjoint = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      walk::Site s{dx[a], dy[a]};
      walk::Site t{1 + dx[b], dy[b]};
      bool inter = (s.x == 1 && s.y == 0) || (t.x == 0 && t.y == 0) ||
                   (s.x == t.x && s.y == t.y);
      if (!inter) ++disjoint;
    }
  return disjoint / 16.0;
}

}  // namespace

TEST_CASE("simulate_walk basics") {
  SUBCASE("single step uniform over the 4 neighbors") {
    int counts[4] = {0, 0, 0, 0};
    for (int p = 0; p < 100000; ++p) {
      rng::RandomStream stream(61, p);
      auto path = walk::simulate_walk(1, {0, 0}, stream);
      auto s = path.positions[1];
      if (s.x == 1) ++counts[0];
      else if (s.x == -1) ++counts[1];
      else if (s.y == 1) ++counts[2];
      else ++counts[3];
    }
    double sigma = std::sqrt(100000 * 0.25 * 0.75);
    for (int c : counts) CHECK(std::fabs(c - 25000.0) < 5.0 * sigma);
  }

  SUBCASE("deterministic under a fixed stream") {
    rng::RandomStream a(62, 7), b(62, 7);
    auto p1 = walk::simulate_walk(100, {0, 0}, a);
    auto p2 = walk::simulate_walk(100, {0, 0}, b);
    for (std::size_t i = 0; i <= 100; ++i) {
      CHECK(p1.positions[i].x == p2.positions[i].x);
      CHECK(p1.positions[i].y == p2.positions[i].y);
    }
  }

  SUBCASE("mean square displacement is k") {
    const std::size_t k = 10000;
    mc::Accumulator acc;
    for (int p = 0; p < 30000; ++p) {
      rng::RandomStream stream(63, p);
      auto path = walk::simulate_walk(k, {0, 0}, stream);
      auto e = path.positions.back();
      acc.add(static_cast<double>(e.x) * e.x + static_cast<double>(e.y) * e.y);
    }
    CHECK(std::fabs(acc.mean() - static_cast<double>(k)) <
          0.02 * static_cast<double>(k));
  }

  SUBCASE("preconditions") {
    rng::RandomStream s(1, 0);
    CHECK_THROWS_AS(walk::simulate_walk(0, {0, 0}, s), std::invalid_argument);
  }
}

TEST_CASE("cut points: hand cases") {
  SUBCASE("straight east path: every interior time is a cut time") {
    std::vector<walk::Site> pos;
    for (int i = 0; i <= 8; ++i) pos.push_back({i, 0});
    auto cuts = walk::cut_points(make_path(pos));
    REQUIRE(cuts.size() == 7);
    for (int i = 0; i < 7; ++i) CHECK(cuts[i] == i + 1);
  }

  SUBCASE("east-west backtrack has no cut times") {
    auto cuts = walk::cut_points(make_path({{0, 0}, {1, 0}, {0, 0}}));
    CHECK(cuts.empty());
  }
}

TEST_CASE("cut points agree with the brute-force oracle") {
  for (int seed = 0; seed < 200; ++seed) {
    rng::RandomStream stream(64, seed);
    std::size_t k = 16 + (stream.next_u64() % 497);
    auto path = walk::simulate_walk(k, {0, 0}, stream);
    auto fast = walk::cut_points(path);
    auto slow = walk::cut_points_bruteforce(path);
    REQUIRE(fast.size() == slow.size());
    for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == slow[i]);
  }
}

TEST_CASE("one-step pack probability matches the enumeration oracle") {
  double oracle = one_step_pair_oracle();
  CHECK(oracle == doctest::Approx(9.0 / 16.0));
  experiments::McOptions opts;
  opts.seed = 65;
  auto res = experiments::walk_time(1, 1, {1}, 200000, opts);
  CHECK(std::fabs(res.prob[0].mean() - oracle) <
        4.0 * res.prob[0].stderr_mean());
}

TEST_CASE("pack non-intersection slope (smoke)") {
  experiments::McOptions opts;
  opts.seed = 66;
  std::vector<std::size_t> grid{64, 128, 256, 512};
  auto res = experiments::walk_time(1, 1, grid, 30000, opts);
  for (std::size_t i = 1; i < grid.size(); ++i)
    CHECK(res.prob[i].mean() < res.prob[i - 1].mean());
  CHECK(res.fit.slope < -0.45);
  CHECK(res.fit.slope > -0.80);
}

TEST_CASE("radial pack survival decays (smoke)") {
  experiments::McOptions opts;
  opts.seed = 67;
  auto res = experiments::walk_radial(1, 1, {16.0, 32.0, 64.0}, 8000, opts);
  CHECK(res.prob[0].mean() > res.prob[2].mean());
  CHECK(res.fit.slope < -0.85);
  CHECK(res.fit.slope > -1.7);
}

TEST_CASE("box counting dimension of a solid square is 2") {
  std::vector<walk::Site> square;
  for (int x = 0; x < 64; ++x)
    for (int y = 0; y < 64; ++y) square.push_back({x, y});
  auto fit = walk::fractal_dimension(square, {1, 2, 4, 8, 16});
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(0.01));

  std::vector<walk::Site> point{{3, 3}};
  CHECK_THROWS_AS(walk::fractal_dimension(point, {1, 2, 4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(walk::fractal_dimension(square, {3, 5}),
                  std::invalid_argument);
}

TEST_CASE("walk dimensions (smoke at small scale)") {
  experiments::McOptions opts;
  opts.seed = 68;
  opts.chunk_size = 1;
  auto res = experiments::walk_dimensions(20000, 8, {2, 4, 8, 16, 32}, opts);
  CHECK(res.frontier_fit.slope > 1.0);
  CHECK(res.frontier_fit.slope < 1.7);
  CHECK(res.cut_fit.slope > 0.4);
  CHECK(res.cut_fit.slope < 1.1);
}

TEST_CASE("frontier of a straight segment is the segment") {
  std::vector<walk::Site> pos;
  for (int i = 0; i <= 10; ++i) pos.push_back({i, 0});
  auto path = make_path(pos);
  auto frontier = walk::frontier_sites(path);
  CHECK(frontier.size() == 11);
}

TEST_CASE("cut-time count scales like n^(1 - zeta_2) (soft ratio bound)") {
  // The spatial cut-point dimension 3/4 halves on the time axis, so the
  // expected number of cut times grows like n^{3/8}.
  std::vector<double> ratios;
  for (std::size_t n : {std::size_t{4096}, std::size_t{16384},
                        std::size_t{65536}}) {
    double total = 0.0;
    const int walks = 40;
    for (int w = 0; w < walks; ++w) {
      rng::RandomStream s(81, 1000 * n + w);
      auto p = walk::simulate_walk(n, {0, 0}, s);
      total += static_cast<double>(walk::cut_points(p).size());
    }
    ratios.push_back(total / walks / std::pow(static_cast<double>(n), 0.375));
  }
  double lo = *std::min_element(ratios.begin(), ratios.end());
  double hi = *std::max_element(ratios.begin(), ratios.end());
  CHECK(lo > 0.5);
  CHECK(hi < 8.0);
  CHECK(hi / lo < 2.0);
}

TEST_CASE("pack (2,1) time exponent matches xi(2,1)/2") {
  experiments::McOptions opts;
  opts.seed = 71;
  opts.workers = 2;
  std::vector<std::size_t> grid;
  for (std::size_t k = 256; k <= 16384; k *= 2) grid.push_back(k);
  auto res = experiments::walk_time(2, 1, grid, 2000000, opts);
  // continuation value xi(2,1)/2 = 1 from the closed form
  CHECK(res.fit.slope == doctest::Approx(-1.0).epsilon(0.06));
}

TEST_CASE("pack (2,2) radial exponent matches xi(2,2) = 35/12") {
  experiments::McOptions opts;
  opts.seed = 72;
  opts.workers = 2;
  auto res = experiments::walk_radial(2, 2, {8, 16, 32, 64}, 3000000, opts);
  CHECK(res.fit.slope ==
        doctest::Approx(-35.0 / 12.0).epsilon(0.15 / (35.0 / 12.0)));
}

TEST_CASE("estimates are monotone-stable under doubling N") {
  experiments::McOptions a, b;
  a.seed = b.seed = 76;
  b.stream_base = 1u << 20;  // independent ensembles
  std::vector<std::size_t> grid{64, 256, 1024};
  auto r1 = experiments::walk_time(1, 1, grid, 30000, a);
  auto r2 = experiments::walk_time(1, 1, grid, 60000, b);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(r2.prob[i].stderr_mean() < r1.prob[i].stderr_mean());
    CHECK(std::fabs(r2.prob[i].mean() - r1.prob[i].mean()) <
          3.5 * r1.prob[i].stderr_mean());
  }
}

TEST_CASE("time and radial exponents for (1,1) satisfy the 2:1 relation") {
  experiments::McOptions opts;
  opts.seed = 73;
  opts.workers = 2;
  std::vector<std::size_t> grid;
  for (std::size_t k = 256; k <= 16384; k *= 2) grid.push_back(k);
  auto tfit = experiments::walk_time(1, 1, grid, 200000, opts);
  auto rfit = experiments::walk_radial(1, 1, {16, 32, 64, 128, 256, 512},
                                       200000, opts);
  CHECK(rfit.fit.slope == doctest::Approx(-1.25).epsilon(0.07 / 1.25));
  double zeta_time = -tfit.fit.slope;
  double zeta_radial = -rfit.fit.slope / 2.0;
  double se = std::sqrt(tfit.fit.slope_stderr * tfit.fit.slope_stderr +
                        0.25 * rfit.fit.slope_stderr * rfit.fit.slope_stderr);
  CHECK(std::fabs(zeta_time - zeta_radial) < 3.0 * se + 0.01);
}
