#ifndef SLELAB_EXTREMAL_LENGTH_HPP
#define SLELAB_EXTREMAL_LENGTH_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace slelab::excursion {

/**
 * Doubly-marked region on a square grid. Cell flags: 0 outside, 1 domain,
 * 2 arc A, 3 arc B (arcs are domain cells held at fixed potential).
 *
 * Text format, one header line then `height` rows of `width` characters:
 *
 *   gridmask <width> <height>
 *   ....####....
 *   ..AA####BB..
 *
 * with '.' outside, '#' domain, 'A' / 'B' the marked arcs.
 */
struct GridMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> cells;

  std::uint8_t at(int x, int y) const {
    return cells[static_cast<std::size_t>(y) * width + x];
  }
  std::uint8_t& at(int x, int y) {
    return cells[static_cast<std::size_t>(y) * width + x];
  }

  static GridMask parse(const std::string& text);
  std::string serialize() const;

  /// 2x block subdivision (same staircase region, finer lattice).
  GridMask refined() const;
};

/// Rectangle (0, L) x (0, pi) at ny cells of height; arcs = left/right edges.
GridMask rectangle_mask(double L, int ny);

/// Annulus r < |z| < 1 sampled on an n x n grid; arcs = inner/outer circles.
GridMask annulus_mask(double r, int n);

/// Annulus minus the radial slit [slit_from, 1] on the positive axis.
GridMask slit_annulus_mask(double r, double slit_from, int n);

/// Effective resistance between the marked arcs (unit conductance per edge).
/// Conjugate-gradient solve of the discrete Dirichlet problem.
double grid_resistance(const GridMask& m);

/// pi * extremal distance between the arcs, single resolution.
double pi_extremal_distance(const GridMask& m);

/// Richardson-extrapolated value from resolutions n and 2n of a geometry
/// builder (first-order boundary error eliminated).
double pi_extremal_distance_richardson(
    const std::function<GridMask(int)>& builder, int n);

/// Extrapolation over the mask's own 2x block refinement (arbitrary input).
double pi_extremal_distance_richardson(const GridMask& m);

}  // namespace slelab::excursion

#endif
