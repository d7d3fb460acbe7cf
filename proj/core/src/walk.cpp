#include "slelab/walk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace slelab::walk {

namespace {
const int kDX[4] = {1, -1, 0, 0};
const int kDY[4] = {0, 0, 1, -1};
}  // namespace

LatticePath simulate_walk(std::size_t k, Site start,
                          rng::RandomStream& stream) {
  if (k < 1) throw std::invalid_argument("simulate_walk: k must be >= 1");
  LatticePath p;
  p.positions.reserve(k + 1);
  p.site_index.reserve(k + 1);
  Site cur = start;
  p.positions.push_back(cur);
  p.site_index[site_key(cur.x, cur.y)] = {0, 0};
  for (std::size_t i = 1; i <= k; ++i) {
    int d = static_cast<int>(stream.next_u64() & 3u);
    cur.x += kDX[d];
    cur.y += kDY[d];
    p.positions.push_back(cur);
    auto [it, fresh] =
        p.site_index.try_emplace(site_key(cur.x, cur.y),
                                 VisitSpan{static_cast<int>(i), static_cast<int>(i)});
    if (!fresh) it->second.last = static_cast<int>(i);
  }
  return p;
}

std::vector<int> cut_points(const LatticePath& path) {
  std::size_t n = path.steps();
  if (n < 2) throw std::invalid_argument("cut_points: path too short");
  // Coverage of [first, last-1] intervals; uncovered interior k are cut times.
  std::vector<int> delta(n + 1, 0);
  for (const auto& [key, span] : path.site_index) {
    (void)key;
    if (span.last > span.first) {
      delta[span.first] += 1;
      delta[span.last] -= 1;
    }
  }
  std::vector<int> out;
  int cover = 0;
  for (std::size_t k = 0; k < n; ++k) {
    cover += delta[k];
    if (cover == 0 && k >= 1) out.push_back(static_cast<int>(k));
  }
  return out;
}

std::vector<Site> cut_sites(const LatticePath& path) {
  std::vector<Site> out;
  for (int k : cut_points(path)) out.push_back(path.positions[k]);
  return out;
}

std::vector<int> cut_points_bruteforce(const LatticePath& path) {
  std::size_t n = path.steps();
  std::vector<int> out;
  for (std::size_t k = 1; k < n; ++k) {
    std::unordered_set<std::uint64_t> past;
    for (std::size_t i = 0; i <= k; ++i)
      past.insert(site_key(path.positions[i].x, path.positions[i].y));
    bool cut = true;
    for (std::size_t i = k + 1; i <= n && cut; ++i)
      if (past.count(site_key(path.positions[i].x, path.positions[i].y)))
        cut = false;
    if (cut) out.push_back(static_cast<int>(k));
  }
  return out;
}

std::vector<Site> frontier_sites(const LatticePath& path) {
  int minx = path.positions[0].x, maxx = minx;
  int miny = path.positions[0].y, maxy = miny;
  for (const auto& s : path.positions) {
    minx = std::min(minx, s.x);
    maxx = std::max(maxx, s.x);
    miny = std::min(miny, s.y);
    maxy = std::max(maxy, s.y);
  }
  int W = maxx - minx + 3, H = maxy - miny + 3;  // one-cell pad all around
  std::vector<std::uint8_t> trace(static_cast<std::size_t>(W) * H, 0);
  auto at = [&](int x, int y) -> std::uint8_t& {
    return trace[static_cast<std::size_t>(y - miny + 1) * W + (x - minx + 1)];
  };
  for (const auto& s : path.positions) at(s.x, s.y) = 1;

  // Flood the complement from the pad border, 4-connectivity.
  std::vector<std::uint8_t> outside(static_cast<std::size_t>(W) * H, 0);
  std::vector<int> stack;
  auto push = [&](int ix) {
    if (!outside[ix] && !trace[ix]) {
      outside[ix] = 1;
      stack.push_back(ix);
    }
  };
  for (int x = 0; x < W; ++x) {
    push(x);
    push((H - 1) * W + x);
  }
  for (int y = 0; y < H; ++y) {
    push(y * W);
    push(y * W + W - 1);
  }
  while (!stack.empty()) {
    int ix = stack.back();
    stack.pop_back();
    int x = ix % W, y = ix / W;
    if (x + 1 < W) push(ix + 1);
    if (x - 1 >= 0) push(ix - 1);
    if (y + 1 < H) push(ix + W);
    if (y - 1 >= 0) push(ix - W);
  }

  // Frontier: trace cells with an outside cell among their 8 neighbors.
  std::vector<Site> out;
  std::unordered_set<std::uint64_t> seen;
  for (const auto& [key, span] : path.site_index) {
    (void)span;
    if (!seen.insert(key).second) continue;
    int x = static_cast<int>(static_cast<std::int32_t>(key >> 32));
    int y = static_cast<int>(static_cast<std::int32_t>(key & 0xffffffffu));
    bool boundary = false;
    for (int dx = -1; dx <= 1 && !boundary; ++dx)
      for (int dy = -1; dy <= 1 && !boundary; ++dy) {
        if (dx == 0 && dy == 0) continue;
        int gx = x - minx + 1 + dx, gy = y - miny + 1 + dy;
        if (outside[static_cast<std::size_t>(gy) * W + gx]) boundary = true;
      }
    if (boundary) out.push_back({x, y});
  }
  return out;
}

namespace {

// Incremental two-pack disjointness: walks of pack A insert into set A and
// probe set B, and vice versa; returns false at the first shared site.
struct PackState {
  std::vector<Site> pos_a, pos_b;
  std::unordered_set<std::uint64_t> sites_a, sites_b;
  bool disjoint = true;

  PackState(int n, int m) {
    pos_a.assign(n, {0, 0});
    pos_b.assign(m, {1, 0});
    sites_a.insert(site_key(0, 0));
    sites_b.insert(site_key(1, 0));
    if (sites_b.count(site_key(0, 0))) disjoint = false;
  }

  void step_all(rng::RandomStream& stream) {
    for (auto& s : pos_a) {
      int d = static_cast<int>(stream.next_u64() & 3u);
      s.x += kDX[d];
      s.y += kDY[d];
      std::uint64_t k = site_key(s.x, s.y);
      sites_a.insert(k);
      if (sites_b.count(k)) disjoint = false;
    }
    for (auto& s : pos_b) {
      int d = static_cast<int>(stream.next_u64() & 3u);
      s.x += kDX[d];
      s.y += kDY[d];
      std::uint64_t k = site_key(s.x, s.y);
      sites_b.insert(k);
      if (sites_a.count(k)) disjoint = false;
    }
  }
};

mc::FitResult fit_from_acc(const std::vector<double>& scales,
                           const std::vector<mc::Accumulator>& acc) {
  std::vector<mc::ScalePoint> pts;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    double p = acc[i].mean();
    if (p > 0.0)
      pts.push_back({scales[i], p, acc[i].stderr_mean()});
  }
  if (pts.size() < 3) return {};
  return mc::fit_exponent(pts);
}

}  // namespace

PackProbability nonintersection_time_probability(
    int n, int m, const std::vector<std::size_t>& k_grid, std::size_t n_trials,
    rng::RandomStream& stream) {
  if (n < 1 || m < 1)
    throw std::invalid_argument("nonintersection: pack sizes must be >= 1");
  if (k_grid.empty()) throw std::invalid_argument("nonintersection: empty grid");
  PackProbability out;
  out.k_grid = k_grid;
  out.prob.resize(k_grid.size());
  std::size_t k_max = k_grid.back();

  for (std::size_t trial = 0; trial < n_trials; ++trial) {
    PackState st(n, m);
    std::size_t next = 0;
    for (std::size_t k = 0; k <= k_max && next < k_grid.size(); ++k) {
      while (next < k_grid.size() && k_grid[next] == k) {
        out.prob[next].add(st.disjoint ? 1.0 : 0.0);
        ++next;
      }
      if (!st.disjoint) {
        // Intersection is permanent; remaining grid points get zeros.
        while (next < k_grid.size()) out.prob[next++].add(0.0);
        break;
      }
      if (k < k_max) st.step_all(stream);
    }
  }

  std::vector<double> scales(k_grid.begin(), k_grid.end());
  out.fit = fit_from_acc(scales, out.prob);
  return out;
}

RadialPackProbability nonintersection_radial_probability(
    int n, int m, const std::vector<double>& radii, std::size_t n_trials,
    rng::RandomStream& stream) {
  if (n < 1 || m < 1)
    throw std::invalid_argument("nonintersection: pack sizes must be >= 1");
  for (double r : radii)
    if (!(r >= 4.0))
      throw std::invalid_argument("nonintersection_radial: radii must be >= 4");
  RadialPackProbability out;
  out.radii = radii;
  out.prob.resize(radii.size());

  for (std::size_t trial = 0; trial < n_trials; ++trial) {
    PackState st(n, m);
    bool dead = false;
    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
      double R2 = radii[ri] * radii[ri];
      if (!dead) {
        // Advance every walk until it leaves radius R.
        auto advance = [&](std::vector<Site>& pos,
                           std::unordered_set<std::uint64_t>& own,
                           std::unordered_set<std::uint64_t>& other) {
          for (auto& s : pos) {
            while (static_cast<double>(s.x) * s.x +
                       static_cast<double>(s.y) * s.y < R2) {
              int d = static_cast<int>(stream.next_u64() & 3u);
              s.x += kDX[d];
              s.y += kDY[d];
              std::uint64_t k = site_key(s.x, s.y);
              own.insert(k);
              if (other.count(k)) st.disjoint = false;
            }
          }
        };
        advance(st.pos_a, st.sites_a, st.sites_b);
        advance(st.pos_b, st.sites_b, st.sites_a);
        if (!st.disjoint) dead = true;
      }
      out.prob[ri].add(st.disjoint ? 1.0 : 0.0);
    }
  }
  out.fit = fit_from_acc(radii, out.prob);
  return out;
}

std::vector<std::size_t> box_counts(const std::vector<Site>& points,
                                    const std::vector<int>& scales) {
  if (points.empty()) throw std::invalid_argument("box_counts: empty point set");
  std::vector<std::size_t> counts;
  counts.reserve(scales.size());
  std::unordered_set<std::uint64_t> boxes;
  for (int s : scales) {
    if (s < 1 || (s & (s - 1)) != 0)
      throw std::invalid_argument("box_counts: scales must be powers of two");
    boxes.clear();
    for (const auto& p : points) {
      int bx = p.x >= 0 ? p.x / s : (p.x - s + 1) / s;
      int by = p.y >= 0 ? p.y / s : (p.y - s + 1) / s;
      boxes.insert(site_key(bx, by));
    }
    counts.push_back(boxes.size());
  }
  return counts;
}

mc::FitResult fractal_dimension(const std::vector<Site>& points,
                                const std::vector<int>& scales) {
  if (scales.size() < 2)
    throw std::invalid_argument("fractal_dimension: need >= 2 scales");
  std::vector<int> sorted = scales;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> counts = box_counts(points, sorted);

  // Drop the smallest scale (lattice-artifact regime); degenerate sets
  // occupying one box at every scale are rejected.
  bool degenerate = true;
  for (std::size_t c : counts)
    if (c > 1) degenerate = false;
  if (degenerate)
    throw std::invalid_argument("fractal_dimension: degenerate point set");

  std::size_t from = sorted.size() >= 3 ? 1 : 0;
  std::vector<mc::ScalePoint> pts;
  for (std::size_t i = from; i < sorted.size(); ++i)
    pts.push_back({1.0 / static_cast<double>(sorted[i]),
                   static_cast<double>(counts[i]), 0.0});
  if (pts.size() == 2) {
    mc::FitResult r;
    double x0 = std::log(pts[0].scale), x1 = std::log(pts[1].scale);
    double y0 = std::log(pts[0].estimate), y1 = std::log(pts[1].estimate);
    r.slope = (y1 - y0) / (x1 - x0);
    r.intercept = y0 - r.slope * x0;
    r.method = "loglog-2pt";
    return r;
  }
  return mc::fit_exponent(pts);
}

}  // namespace slelab::walk
