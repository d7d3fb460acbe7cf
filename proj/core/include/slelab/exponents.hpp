#ifndef SLELAB_EXPONENTS_HPP
#define SLELAB_EXPONENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace slelab::expo {

/**
 * A closed-form exponent value with provenance. When every sqrt(24 lambda + 1)
 * involved is an integer the value is carried as an exact reduced fraction
 * num/den as well as a double; landmark identities then test exactly.
 */
struct ExponentValue {
  double value = 0.0;
  long long num = 0;
  long long den = 1;
  bool exact = false;
  std::string formula;
  bool in_region = true;
};

/// Pack of non-negative path weights with validity bookkeeping.
struct PackVector {
  std::vector<double> lambdas;
  bool xi_semantics_ok = false;   // at least two entries >= 1
  bool closed_form_region = false;  // m-1 entries in {l(l+1)/6}, result >= 35/12

  explicit PackVector(std::vector<double> ls);
};

/// Half-plane winding time exponent zeta_n = (4n^2 - 1)/24, n >= 2.
ExponentValue zeta_n(int n);

/// zeta(2, lambda) = ((5 + sqrt(24 lambda + 1))^2 - 4)/96; in-region for
/// lambda >= 2 (values outside are returned flagged, not rejected).
ExponentValue zeta_2_lambda(double lambda);

/// Half-plane exponent xi~(lambda_1..lambda_m), m >= 2.
ExponentValue xi_tilde(const std::vector<double>& lambdas);

/// eta on [xi~(1,1), inf): ((sqrt(24x+1) - 1)^2 - 4)/48; in-region for x >= 7.
ExponentValue eta_fn(double x);

/// Whole-plane exponent xi(lambda_1..lambda_m); requires at least two
/// entries >= 1.
ExponentValue xi(const std::vector<double>& lambdas);

/// |xi(pack) - xi(pack[0..q-1], xi~(pack[q..]))|; the cascade residual.
double check_cascade(const std::vector<double>& lambdas, int q);

struct DimensionEntry {
  std::string name;
  double value = 0.0;
  long long num = 0, den = 1;
  /// True when the value rests on the analytic continuation established in
  /// companion work rather than the directly proved parameter region.
  bool continuation = false;
};

/// Fractal dimensions of the planar Brownian path landmarks:
/// cut points 3/4, frontier 4/3, pioneer points 7/4.
std::vector<DimensionEntry> dimensions();

/// CSV-ready landmark table of exponent values (name, value, exact fraction).
struct LandmarkRow {
  std::string name;
  double value;
  long long num, den;
  bool exact;
  bool in_region;
};
std::vector<LandmarkRow> landmark_table();

}  // namespace slelab::expo

#endif
