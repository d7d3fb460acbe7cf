#include "slelab/coordinate_change.hpp"

#include <cmath>
#include <stdexcept>

namespace slelab::loewner {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

CoordinateChange radial_to_chordal(const DrivingPath& radial, double theta0,
                                   double trunc_tol) {
  if (radial.values.empty())
    throw std::invalid_argument("radial_to_chordal: empty driving path");
  double y = std::fmod(-theta0, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  if (y <= trunc_tol || y >= kTwoPi - trunc_tol)
    throw std::invalid_argument("radial_to_chordal: theta0 too close to 0");

  CoordinateChange cc;
  double tau = radial.dt;
  double a = 1.0, b = 0.0, u = 0.0;
  double em1 = -std::expm1(-tau);  // 1 - e^-tau

  auto record = [&](std::size_t k) {
    double g = 1.0 / std::tan(0.5 * y);
    cc.t.push_back(static_cast<double>(k) * tau);
    cc.u.push_back(u);
    cc.a.push_back(a);
    cc.b.push_back(b);
    cc.gamma.push_back(g);
    cc.beta.push_back(a * g + b);
    cc.e.push_back(std::polar(1.0, radial.values[k] + y));
  };
  record(0);

  for (std::size_t k = 0; k + 1 < radial.values.size(); ++k) {
    double c = std::cos(0.5 * y);
    double c2 = c * c;
    double s2 = 1.0 - c2;
    double den = 1.0 - c2 * (1.0 - em1);  // 1 - c^2 e^-tau
    // Exact step integrals of the a, b, u equations.
    b += -a * c * em1 / (2.0 * std::sqrt(s2) * den);
    double du = a * a * em1 * (2.0 - c2 * (2.0 - em1)) / (8.0 * s2 * den * den);
    cc.du.push_back(du);
    u += du;
    a *= std::exp(radial_flow_dlogphi(y, tau));
    y = radial_flow_angle(y, tau);
    // Driving jump.
    y -= radial.values[k + 1] - radial.values[k];
    if (y <= trunc_tol || y >= kTwoPi - trunc_tol) {
      cc.truncated = true;
      break;
    }
    record(k + 1);
  }
  return cc;
}

}  // namespace slelab::loewner
