#ifndef SLELAB_COORDINATE_CHANGE_HPP
#define SLELAB_COORDINATE_CHANGE_HPP

#include <complex>
#include <vector>

#include "slelab/loewner.hpp"

namespace slelab::loewner {

/**
 * Radial -> chordal change of coordinates along one driving path.
 *
 * Tracks e_t = g_t(1) through the boundary angle Y_t of 1 relative to the
 * driving value, gamma_t = cot(Y_t/2), the linear normalization
 * phi_t(z) = a(t) z + b(t) with a' = -(1+gamma^2)a/2, b' = -(1+gamma^2)a
 * gamma/2, beta_t = a gamma + b, and the time change u' = (1+gamma^2)^2
 * a^2 / 4. All step updates are exact integrals under piecewise-constant
 * driving. For kappa = 6, beta as a function of u is a driftless Brownian
 * motion of variance rate kappa.
 */
struct CoordinateChange {
  std::vector<double> t;
  std::vector<double> u;
  std::vector<double> du;  // exact per-step increments of u (all positive)
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> gamma;
  std::vector<double> beta;
  std::vector<std::complex<double>> e;  // e_t = g_t(1)
  bool truncated = false;  // stopped because delta_t approached e_t
};

/// theta0 is the start angle of the driving (must differ from 0, the angle
/// of the tracked point 1). trunc_tol is the angular distance to the
/// disconnection at which the transform stops with the truncated flag;
/// beyond it the chordal clock u blows up and the grids stop being
/// numerically meaningful.
CoordinateChange radial_to_chordal(const DrivingPath& radial, double theta0,
                                   double trunc_tol = 0.05);

}  // namespace slelab::loewner

#endif
