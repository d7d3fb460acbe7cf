#ifndef SLELAB_CARDY_HPP
#define SLELAB_CARDY_HPP

#include <complex>

namespace slelab::cardy {

/// Gamma function for x > 0 (Lanczos approximation, g = 607/128, 15 terms;
/// relative error below 1e-13 on the needed range).
double gamma_fn(double x);

/// 2F1(1/3, 2/3; 4/3; x) on [0, 1]; power series up to x = 1/2, linear
/// transformation toward the logarithmic edge above, Gauss summation at 1.
double hyp2f1_third(double x);

/// Cardy crossing function G(x) = 2F1(1/3,2/3;4/3;x) * K * x^(1/3) with
/// K = sqrt(pi) / (2^(1/3) Gamma(1/3) Gamma(7/6)); increasing, G(0)=0, G(1)=1.
double cardy_G(double x);

/// Closed-form derivative G'(x) = (sqrt(pi)/3) 2^(-1/3) / (Gamma(1/3)
/// Gamma(7/6)) * ((1-x) x)^(-2/3).
double cardy_G_prime(double x);

/**
 * Conformal rectangle drawn on the unit circle: marked points
 *   w1 = e^{i(pi - theta)}, w1' = e^{i(pi + alpha theta)},
 *   w2 = e^{i(pi + theta)}, w3 = e^{-i theta}, w4 = e^{i theta},
 * in counterclockwise order. The crossing process starts at w1' and targets
 * the arc (w3, w4).
 */
struct Quadrilateral {
  double theta = 0.1;   // in (0, pi/2)
  double alpha = 0.0;   // in (-1, 1)

  Quadrilateral(double theta_, double alpha_);
  std::complex<double> w1() const;
  std::complex<double> w1p() const;
  std::complex<double> w2() const;
  std::complex<double> w3() const;
  std::complex<double> w4() const;
};

struct CrossRatios {
  double c_prime = 0.0;
  double c_dprime = 0.0;
};

/// c' = cot(theta) tan((1+alpha) theta / 2),
/// c'' = sin((1+alpha) theta/2) / (sin(theta) cos((1-alpha) theta/2)).
CrossRatios cross_ratios(const Quadrilateral& q);

struct CrossingResult {
  double c_prime = 0.0;
  double c_dprime = 0.0;
  double G_prime = 0.0;    // G(c')
  double G_dprime = 0.0;   // G(c'')
  double p_cross = 0.0;    // G(c') - G(c'')
  double asymptotic = 0.0; // (sqrt(pi)/6) Gamma(1/3)^-1 Gamma(7/6)^-1 (1-a^2)^(1/3) theta^2
};

CrossingResult crossing_probability(const Quadrilateral& q);

}  // namespace slelab::cardy

#endif
