#ifndef SLELAB_WALK_HPP
#define SLELAB_WALK_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "slelab/accumulator.hpp"
#include "slelab/rng.hpp"
#include "slelab/stats.hpp"

namespace slelab::walk {

struct Site {
  int x = 0;
  int y = 0;
  bool operator==(const Site&) const = default;
};

inline std::uint64_t site_key(int x, int y) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
         static_cast<std::uint32_t>(y);
}

struct VisitSpan {
  int first = 0;
  int last = 0;
};

/// Nearest-neighbor path on Z^2 with per-site (first, last) visit times.
struct LatticePath {
  std::vector<Site> positions;  // length k+1 for k steps
  std::unordered_map<std::uint64_t, VisitSpan> site_index;

  std::size_t steps() const { return positions.empty() ? 0 : positions.size() - 1; }
};

LatticePath simulate_walk(std::size_t k, Site start, rng::RandomStream& stream);

/**
 * Cut times of the path: interior k such that the sites of S[0,k] and
 * S[k+1,n] are disjoint. Linear time via the per-site visit intervals:
 * k is a cut time iff no site has first <= k < last.
 */
std::vector<int> cut_points(const LatticePath& path);

/// Positions S_k at the cut times.
std::vector<Site> cut_sites(const LatticePath& path);

/// O(n^2) reference oracle for cut_points (hash-set disjointness per k).
std::vector<int> cut_points_bruteforce(const LatticePath& path);

/**
 * Frontier of the trace: trace cells 8-adjacent to the unbounded component
 * of the complement, the complement flood-filled with 4-connectivity on a
 * padded bounding grid.
 */
std::vector<Site> frontier_sites(const LatticePath& path);

/// Per-k estimate of P[traces of two packs (n from origin, m from (1,0))
/// stay disjoint up to k steps], one walk ensemble evaluated at every k.
struct PackProbability {
  std::vector<std::size_t> k_grid;
  std::vector<mc::Accumulator> prob;  // indicator accumulators
  mc::FitResult fit;                  // log p vs log k
};

PackProbability nonintersection_time_probability(
    int n, int m, const std::vector<std::size_t>& k_grid, std::size_t n_trials,
    rng::RandomStream& stream);

/// Radial version: packs run until exiting radius R, nested over the grid.
struct RadialPackProbability {
  std::vector<double> radii;
  std::vector<mc::Accumulator> prob;
  mc::FitResult fit;  // log p vs log R
};

RadialPackProbability nonintersection_radial_probability(
    int n, int m, const std::vector<double>& radii, std::size_t n_trials,
    rng::RandomStream& stream);

/**
 * Box-counting dimension of a site set: weighted fit of log(box count)
 * against log(1/scale) over power-of-two scales; the smallest scale is
 * dropped (lattice-artifact regime).
 */
mc::FitResult fractal_dimension(const std::vector<Site>& points,
                                const std::vector<int>& scales);

/// Box counts per scale (exposed for accumulation across walks).
std::vector<std::size_t> box_counts(const std::vector<Site>& points,
                                    const std::vector<int>& scales);

}  // namespace slelab::walk

#endif
