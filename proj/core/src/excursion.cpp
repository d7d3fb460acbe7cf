#include "slelab/excursion.hpp"

#include <cmath>
#include <stdexcept>

namespace slelab::excursion {

namespace {
constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kTwoPi = 2.0 * kPi;

// Brownian-bridge probability of touching a line at distances d0, d1 from
// the endpoints of one step of variance dt (per coordinate).
inline double bridge_cross_prob(double d0, double d1, double dt) {
  double e = 2.0 * d0 * d1 / dt;
  return e > 36.0 ? 0.0 : std::exp(-e);
}
}  // namespace

double excursion_mass_hitting(double r) {
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument("excursion_mass_hitting: r outside (0,1)");
  return kTwoPi / std::log(1.0 / r);
}

ExcursionPath sample_annulus_excursion(double r, double s, double dt,
                                       rng::RandomStream& stream,
                                       std::size_t trail_stride) {
  if (!(r > 0.0 && s > 0.0 && r < 1.0 - s))
    throw std::invalid_argument(
        "sample_annulus_excursion: need 0 < r < 1-s < 1");
  if (!(dt > 0.0)) throw std::invalid_argument("annulus: dt <= 0");

  ExcursionPath out;
  out.domain = ExcursionPath::Domain::Annulus;
  out.param = r;
  out.weight = kTwoPi / std::log(1.0 / (1.0 - s));

  double phi = kTwoPi * stream.next_uniform();
  std::complex<double> z = std::polar(1.0 - s, phi);
  out.start = std::polar(1.0, phi);  // prime-end label of the start
  double sdt = std::sqrt(dt);

  for (std::uint64_t k = 0;; ++k) {
    std::complex<double> dz(sdt * stream.next_gaussian(),
                            sdt * stream.next_gaussian());
    std::complex<double> znew = z + dz;
    double a0 = std::abs(z), a1 = std::abs(znew);

    if (a1 >= 1.0) {  // bisect the segment to the outer circle
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 40; ++it) {
        double mid = 0.5 * (lo + hi);
        (std::abs(z + mid * dz) >= 1.0 ? hi : lo) = mid;
      }
      out.end = z + hi * dz;
      out.hit_inner = false;
      return out;
    }
    if (a1 <= r) {  // bisect to the inner circle
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 40; ++it) {
        double mid = 0.5 * (lo + hi);
        (std::abs(z + mid * dz) <= r ? hi : lo) = mid;
      }
      out.end = z + hi * dz;
      out.hit_inner = true;
      return out;
    }
    // Bridge kill tests against the two circles (locally flat).
    double p_out = bridge_cross_prob(1.0 - a0, 1.0 - a1, dt);
    if (p_out > 0.0 && stream.next_uniform() < p_out) {
      std::complex<double> mid = 0.5 * (z + znew);
      out.end = mid / std::abs(mid);
      out.hit_inner = false;
      return out;
    }
    double p_in = bridge_cross_prob(a0 - r, a1 - r, dt);
    if (p_in > 0.0 && stream.next_uniform() < p_in) {
      std::complex<double> mid = 0.5 * (z + znew);
      out.end = mid / std::abs(mid) * r;
      out.hit_inner = true;
      return out;
    }
    z = znew;
    if (trail_stride > 0 && k % trail_stride == 0) out.trail.push_back(z);
  }
}

mc::Accumulator estimate_annulus_hitting_mass(double r, double s, double dt,
                                              std::size_t n_samples,
                                              rng::RandomStream& stream) {
  mc::Accumulator acc;
  for (std::size_t i = 0; i < n_samples; ++i) {
    ExcursionPath p = sample_annulus_excursion(r, s, dt, stream);
    acc.add(p.hit_inner ? p.weight : 0.0);
  }
  return acc;
}

ExcursionPath sample_rectangle_excursion(double L, double s, double dt,
                                         rng::RandomStream& stream,
                                         std::size_t trail_stride) {
  if (!(s > 0.0 && s < L))
    throw std::invalid_argument("rectangle: need 0 < s < L");
  double y0 = kPi * stream.next_uniform();
  ExcursionPath out = sample_rectangle_excursion_from({s, y0}, L, dt, stream,
                                                      trail_stride);
  out.start = {0.0, y0};
  out.weight = kPi / s;
  return out;
}

ExcursionPath sample_rectangle_excursion_from(std::complex<double> z0,
                                              double L, double dt,
                                              rng::RandomStream& stream,
                                              std::size_t trail_stride) {
  if (!(L > 0.0)) throw std::invalid_argument("rectangle: L must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("rectangle: dt <= 0");
  if (!(z0.real() > 0.0 && z0.real() < L && z0.imag() > 0.0 &&
        z0.imag() < kPi))
    throw std::invalid_argument("rectangle: start outside the domain");

  ExcursionPath out;
  out.domain = ExcursionPath::Domain::Rectangle;
  out.param = L;
  out.weight = 1.0;

  double x = z0.real(), y = z0.imag();
  out.start = z0;
  double sdt = std::sqrt(dt);

  for (;;) {
    double gx = sdt * stream.next_gaussian();
    double gy = sdt * stream.next_gaussian();
    double xn = x + gx, yn = y + gy;

    // First exit along the segment, if any: smallest crossing parameter.
    double tbest = 2.0;
    int side = -1;  // 0 left, 1 right, 2 bottom, 3 top
    if (xn <= 0.0 && gx != 0.0) {
      double tt = -x / gx;
      if (tt < tbest) { tbest = tt; side = 0; }
    }
    if (xn >= L && gx != 0.0) {
      double tt = (L - x) / gx;
      if (tt < tbest) { tbest = tt; side = 1; }
    }
    if (yn <= 0.0 && gy != 0.0) {
      double tt = -y / gy;
      if (tt < tbest) { tbest = tt; side = 2; }
    }
    if (yn >= kPi && gy != 0.0) {
      double tt = (kPi - y) / gy;
      if (tt < tbest) { tbest = tt; side = 3; }
    }
    if (side >= 0) {
      out.end = {x + tbest * gx, y + tbest * gy};
      out.crossed = side == 1;
      return out;
    }
    // Bridge kill tests per edge.
    const double d[4][2] = {{x, xn}, {L - x, L - xn}, {y, yn}, {kPi - y, kPi - yn}};
    for (int e = 0; e < 4; ++e) {
      double p = bridge_cross_prob(d[e][0], d[e][1], dt);
      if (p > 0.0 && stream.next_uniform() < p) {
        double mx = 0.5 * (x + xn), my = 0.5 * (y + yn);
        switch (e) {
          case 0: out.end = {0.0, my}; break;
          case 1: out.end = {L, my}; break;
          case 2: out.end = {mx, 0.0}; break;
          default: out.end = {mx, kPi}; break;
        }
        out.crossed = e == 1;
        return out;
      }
    }
    x = xn;
    y = yn;
    if (trail_stride > 0) out.trail.push_back({x, y});
  }
}

mc::Accumulator estimate_rectangle_crossing(double L, double s,
                                            std::size_t n_samples, double dt,
                                            rng::RandomStream& stream) {
  if (!(L >= 1.0))
    throw std::invalid_argument("estimate_rectangle_crossing: L must be >= 1");
  if (!(s > 0.0 && s <= 0.05))
    throw std::invalid_argument(
        "estimate_rectangle_crossing: s must be in (0, 0.05]");
  return rectangle_crossing_mass_point(L, s, n_samples, dt, stream);
}

mc::Accumulator rectangle_crossing_mass_point(double L, double s,
                                              std::size_t n_samples, double dt,
                                              rng::RandomStream& stream) {
  if (!(L > 4.0 * s))
    throw std::invalid_argument("rectangle_crossing_mass_point: L <= 4s");
  mc::Accumulator acc;
  for (std::size_t i = 0; i < n_samples; ++i) {
    ExcursionPath p = sample_rectangle_excursion(L, s, dt, stream);
    acc.add(p.crossed ? p.weight : 0.0);
  }
  return acc;
}

double rectangle_right_edge_harmonic_measure(std::complex<double> z,
                                             double L) {
  double x = z.real(), y = z.imag();
  if (!(x > 0.0 && x < L && y > 0.0 && y < kPi))
    throw std::invalid_argument("harmonic_measure: z outside the rectangle");
  double sum = 0.0;
  for (int n = 1; n < 400; n += 2) {
    // sinh(nx)/sinh(nL) computed as exp-differences for stability
    double ratio = std::exp(static_cast<double>(n) * (x - L)) *
                   (1.0 - std::exp(-2.0 * n * x)) /
                   (1.0 - std::exp(-2.0 * n * L));
    double term = 4.0 / (kPi * n) * ratio * std::sin(n * y);
    sum += term;
    if (std::fabs(term) < 1e-17) break;
  }
  return sum;
}

}  // namespace slelab::excursion
