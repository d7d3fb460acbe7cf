#ifndef SLELAB_EXCURSION_HPP
#define SLELAB_EXCURSION_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "slelab/accumulator.hpp"
#include "slelab/rng.hpp"

namespace slelab::excursion {

/// Mass of excursions of the unit disk hitting C_r: 2 pi / log(1/r).
double excursion_mass_hitting(double r);

struct ExcursionPath {
  enum class Domain { Disk, Annulus, Rectangle };
  Domain domain = Domain::Disk;
  double param = 0.0;  // annulus: r; rectangle: L
  std::complex<double> start;
  std::complex<double> end;
  std::vector<std::complex<double>> trail;  // decimated interior samples
  double weight = 1.0;
  bool hit_inner = false;  // annulus: truncated at C_r
  bool crossed = false;    // rectangle: exited through the right edge
};

/**
 * Excursion-measure sample in the annulus A(r, 1): Brownian path started
 * uniformly on the circle of radius 1-s, killed on the unit circle,
 * truncated at the first hit of C_r, weight 2 pi / log(1/(1-s)).
 *
 * Discrete Gaussian steps; a step that exits is bisected to the crossing,
 * and steps that stay inside are killed with the Brownian-bridge boundary
 * crossing probability exp(-2 d0 d1 / dt), which removes the O(sqrt(dt))
 * crossing-mass bias of naive discrete killing.
 */
ExcursionPath sample_annulus_excursion(double r, double s, double dt,
                                       rng::RandomStream& stream,
                                       std::size_t trail_stride = 0);

/// Weighted estimate of the mass of excursions hitting C_r from n samples;
/// consistency oracle is excursion_mass_hitting(r).
mc::Accumulator estimate_annulus_hitting_mass(double r, double s, double dt,
                                              std::size_t n_samples,
                                              rng::RandomStream& stream);

/**
 * mu_{R_L}[E_L]: excursions of the rectangle (0, L) x (0, pi) started
 * uniformly on [s, s + i pi] with weight pi / s; counts exits through the
 * right edge before any other boundary.
 */
mc::Accumulator estimate_rectangle_crossing(double L, double s,
                                            std::size_t n_samples, double dt,
                                            rng::RandomStream& stream);

/// Curve-building variant without the mass-law domain guard: any L > 4s.
mc::Accumulator rectangle_crossing_mass_point(double L, double s,
                                              std::size_t n_samples, double dt,
                                              rng::RandomStream& stream);

/// Single rectangle-crossing sample (start, exit, crossed flag).
ExcursionPath sample_rectangle_excursion(double L, double s, double dt,
                                         rng::RandomStream& stream,
                                         std::size_t trail_stride = 0);

/// Brownian path from a fixed interior point, killed on the rectangle
/// boundary; weight 1 (plain hitting probability).
ExcursionPath sample_rectangle_excursion_from(std::complex<double> z0,
                                              double L, double dt,
                                              rng::RandomStream& stream,
                                              std::size_t trail_stride = 0);

/// Exact harmonic measure of the right edge of (0,L)x(0,pi) from z
/// (separable sine series); reference for crossing probabilities.
double rectangle_right_edge_harmonic_measure(std::complex<double> z, double L);

}  // namespace slelab::excursion

#endif
