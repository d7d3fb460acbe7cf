#include "slelab/cardy.hpp"

#include <cmath>
#include <stdexcept>

namespace slelab::cardy {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;

// Lanczos coefficients for g = 607/128, n = 15 (Godfrey's set).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

double gamma_lanczos(double x) {
  // Valid for x >= 0.5; callers apply the reflection formula below that.
  double acc = kLanczos[0];
  for (int i = 1; i < 15; ++i) acc += kLanczos[i] / (x - 1.0 + i);
  double t = x - 0.5 + kLanczosG;
  return std::sqrt(2.0 * kPi) * std::pow(t, x - 0.5) * std::exp(-t) * acc;
}

double series_2f1(double a, double b, double c, double x, double tol) {
  double term = 1.0, sum = 1.0;
  for (int n = 0; n < 100000; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
    sum += term;
    if (std::fabs(term) < tol * std::fabs(sum)) return sum;
  }
  throw std::runtime_error("hyp2f1: series budget exhausted");
}

double cardy_K() {
  static const double k =
      std::sqrt(kPi) /
      (std::cbrt(2.0) * gamma_fn(1.0 / 3.0) * gamma_fn(7.0 / 6.0));
  return k;
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("gamma_fn: x must be positive");
  if (x < 0.5) return kPi / (std::sin(kPi * x) * gamma_lanczos(1.0 - x));
  return gamma_lanczos(x);
}

double hyp2f1_third(double x) {
  const double a = 1.0 / 3.0, b = 2.0 / 3.0, c = 4.0 / 3.0;
  if (x < 0.0 || x > 1.0)
    throw std::invalid_argument("hyp2f1_third: x outside [0,1]");
  if (x == 1.0)  // Gauss summation: Gamma(c)Gamma(c-a-b)/(Gamma(c-a)Gamma(c-b))
    return gamma_fn(c) * gamma_fn(1.0 / 3.0) / (gamma_fn(1.0) * gamma_fn(b));
  if (x <= 0.5) return series_2f1(a, b, c, x, 1e-16);
  // Linear transformation toward x = 1. With these parameters
  // 2F1(1/3,2/3;2/3;w) = (1-w)^(-1/3) closes the first branch term.
  double w = 1.0 - x;
  double t1 = gamma_fn(c) * gamma_fn(1.0 / 3.0) / gamma_fn(b) *
              std::pow(x, -1.0 / 3.0);
  double gm13 = -3.0 * gamma_fn(2.0 / 3.0);  // Gamma(-1/3)
  double t2 = std::pow(w, 1.0 / 3.0) * gamma_fn(c) * gm13 /
              (gamma_fn(a) * gamma_fn(b)) * series_2f1(1.0, b, c, w, 1e-16);
  return t1 + t2;
}

double cardy_G(double x) {
  if (x < 0.0 || x > 1.0)
    throw std::invalid_argument("cardy_G: x outside [0,1]");
  if (x == 0.0) return 0.0;
  return hyp2f1_third(x) * cardy_K() * std::cbrt(x);
}

double cardy_G_prime(double x) {
  if (!(x > 0.0 && x < 1.0))
    throw std::invalid_argument("cardy_G_prime: x outside (0,1)");
  return cardy_K() / 3.0 * std::pow((1.0 - x) * x, -2.0 / 3.0);
}

Quadrilateral::Quadrilateral(double theta_, double alpha_)
    : theta(theta_), alpha(alpha_) {
  if (!(theta > 0.0 && theta < kPi / 2.0))
    throw std::invalid_argument("Quadrilateral: theta outside (0, pi/2)");
  if (!(alpha > -1.0 && alpha < 1.0))
    throw std::invalid_argument("Quadrilateral: alpha outside (-1, 1)");
}

std::complex<double> Quadrilateral::w1() const {
  return std::polar(1.0, kPi - theta);
}
std::complex<double> Quadrilateral::w1p() const {
  return std::polar(1.0, kPi + alpha * theta);
}
std::complex<double> Quadrilateral::w2() const {
  return std::polar(1.0, kPi + theta);
}
std::complex<double> Quadrilateral::w3() const {
  return std::polar(1.0, -theta);
}
std::complex<double> Quadrilateral::w4() const {
  return std::polar(1.0, theta);
}

CrossRatios cross_ratios(const Quadrilateral& q) {
  // c' is the cross-ratio (w1-w1')(w4-w2) / ((w4-w1')(w1-w2)) and c'' the one
  // with w3 in place of w4. Their trig evaluations below are fixed against
  // the definitions numerically; note c'' <= c' and both tend to (1+alpha)/2.
  CrossRatios out;
  out.c_prime = std::sin(0.5 * (1.0 + q.alpha) * q.theta) /
                (std::sin(q.theta) * std::cos(0.5 * (1.0 - q.alpha) * q.theta));
  out.c_dprime =
      std::tan(0.5 * (1.0 + q.alpha) * q.theta) / std::tan(q.theta);
  return out;
}

CrossingResult crossing_probability(const Quadrilateral& q) {
  CrossRatios cr = cross_ratios(q);
  CrossingResult out;
  out.c_prime = cr.c_prime;
  out.c_dprime = cr.c_dprime;
  out.G_prime = cardy_G(cr.c_prime);
  out.G_dprime = cardy_G(cr.c_dprime);
  out.p_cross = out.G_prime - out.G_dprime;
  double one_m_a2 = (1.0 - q.alpha) * (1.0 + q.alpha);
  out.asymptotic = std::sqrt(kPi) / 6.0 / gamma_fn(1.0 / 3.0) /
                   gamma_fn(7.0 / 6.0) * std::cbrt(one_m_a2) * q.theta * q.theta;
  return out;
}

}  // namespace slelab::cardy
