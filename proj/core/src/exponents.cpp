#include "slelab/exponents.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace slelab::expo {

namespace {

// sqrt(24 lambda + 1) as an exact integer when possible.
bool exact_root(double lambda, long long& s) {
  double v = 24.0 * lambda + 1.0;
  long long r = std::llround(std::sqrt(v));
  if (r >= 0 && std::fabs(static_cast<double>(r) * static_cast<double>(r) - v) <
                    1e-9 * std::max(1.0, v)) {
    s = r;
    return true;
  }
  return false;
}

ExponentValue from_fraction(long long num, long long den, std::string formula,
                            bool in_region) {
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 0) {
    num /= g;
    den /= g;
  }
  ExponentValue v;
  v.num = num;
  v.den = den;
  v.exact = true;
  v.value = static_cast<double>(num) / static_cast<double>(den);
  v.formula = std::move(formula);
  v.in_region = in_region;
  return v;
}

ExponentValue from_double(double x, std::string formula, bool in_region) {
  ExponentValue v;
  v.value = x;
  v.exact = false;
  v.formula = std::move(formula);
  v.in_region = in_region;
  return v;
}

// ((sum of roots - m)^2 - c) / d, exact when all roots are integers.
ExponentValue sum_rule(const std::vector<double>& lambdas, long long m_minus,
                       long long c, long long d, std::string formula,
                       bool in_region) {
  long long total = 0;
  bool exact = true;
  double total_d = 0.0;
  for (double l : lambdas) {
    if (l < 0.0) throw std::invalid_argument("exponent: negative pack entry");
    long long s;
    if (exact && exact_root(l, s))
      total += s;
    else
      exact = false;
    total_d += std::sqrt(24.0 * l + 1.0);
  }
  if (exact) {
    long long base = total - m_minus;
    return from_fraction(base * base - c, d, std::move(formula), in_region);
  }
  double base = total_d - static_cast<double>(m_minus);
  return from_double((base * base - static_cast<double>(c)) / static_cast<double>(d),
                     std::move(formula), in_region);
}

bool in_triangular_set(double lambda) {
  // {l(l+1)/6 : l = 0, 1, 2, ...}
  double disc = 1.0 + 24.0 * lambda;
  double l = (-1.0 + std::sqrt(disc)) / 2.0;
  return std::fabs(l - std::round(l)) < 1e-7;
}

}  // namespace

PackVector::PackVector(std::vector<double> ls) : lambdas(std::move(ls)) {
  int big = 0;
  for (double l : lambdas)
    if (l >= 1.0 - 1e-12) ++big;
  xi_semantics_ok = big >= 2;
  int special = 0;
  for (double l : lambdas)
    if (in_triangular_set(l)) ++special;
  closed_form_region = special >= static_cast<int>(lambdas.size()) - 1;
}

ExponentValue zeta_n(int n) {
  if (n < 2) throw std::invalid_argument("zeta_n: n must be >= 2");
  long long nn = n;
  return from_fraction(4 * nn * nn - 1, 24, "zeta_n", true);
}

ExponentValue zeta_2_lambda(double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("zeta_2_lambda: lambda < 0");
  bool in_region = lambda >= 2.0 - 1e-12;
  long long s;
  if (exact_root(lambda, s))
    return from_fraction((5 + s) * (5 + s) - 4, 96, "zeta_2_lambda", in_region);
  double r = std::sqrt(24.0 * lambda + 1.0);
  return from_double(((5.0 + r) * (5.0 + r) - 4.0) / 96.0, "zeta_2_lambda",
                     in_region);
}

ExponentValue xi_tilde(const std::vector<double>& lambdas) {
  std::size_t m = lambdas.size();
  if (m < 2) throw std::invalid_argument("xi_tilde: need at least two entries");
  int special = 0;
  for (double l : lambdas)
    if (in_triangular_set(l)) ++special;
  bool in_region = special >= static_cast<int>(m) - 1;
  return sum_rule(lambdas, static_cast<long long>(m) - 1, 1, 24, "xi_tilde",
                  in_region);
}

ExponentValue eta_fn(double x) {
  const double xi_tilde_11 = 10.0 / 3.0;
  if (x < xi_tilde_11 - 1e-12)
    throw std::invalid_argument("eta: defined only from xi_tilde(1,1) = 10/3");
  bool in_region = x >= 7.0 - 1e-12;
  long long s;
  if (exact_root(x, s))
    return from_fraction((s - 1) * (s - 1) - 4, 48, "eta", in_region);
  double r = std::sqrt(24.0 * x + 1.0);
  return from_double(((r - 1.0) * (r - 1.0) - 4.0) / 48.0, "eta", in_region);
}

ExponentValue xi(const std::vector<double>& lambdas) {
  PackVector pack(lambdas);
  if (lambdas.size() < 2)
    throw std::invalid_argument("xi: need at least two entries");
  if (!pack.xi_semantics_ok)
    throw std::invalid_argument("xi: needs at least two entries >= 1");
  ExponentValue v = sum_rule(lambdas, static_cast<long long>(lambdas.size()), 4,
                             48, "xi", true);
  v.in_region = pack.closed_form_region && v.value >= 35.0 / 12.0 - 1e-12;
  return v;
}

double check_cascade(const std::vector<double>& lambdas, int q) {
  if (q < 1 || q >= static_cast<int>(lambdas.size()))
    throw std::invalid_argument("check_cascade: split index out of range");
  std::vector<double> head(lambdas.begin(), lambdas.begin() + q);
  std::vector<double> tail(lambdas.begin() + q, lambdas.end());
  ExponentValue full = xi(lambdas);
  // xi~ of a single entry reduces to the entry itself.
  double inner_value = tail.size() == 1 ? tail[0] : xi_tilde(tail).value;
  head.push_back(inner_value);
  ExponentValue folded = xi(head);
  if (!full.in_region || !folded.in_region)
    throw std::invalid_argument("check_cascade: regime violation");
  return std::fabs(full.value - folded.value);
}

std::vector<DimensionEntry> dimensions() {
  std::vector<DimensionEntry> out;
  // cut points: 2 - 2 zeta_2 = 2 - 2 (5/8) = 3/4
  out.push_back({"cut", 0.75, 3, 4, false});
  // frontier: 2 - eta_2 with eta_2 = lim 2 zeta(2, lambda) = 2/3
  out.push_back({"frontier", 4.0 / 3.0, 4, 3, true});
  // pioneer: 2 - eta_1 with eta_1 = lim 2 zeta(1, lambda) = 1/4
  out.push_back({"pioneer", 1.75, 7, 4, true});
  return out;
}

std::vector<LandmarkRow> landmark_table() {
  std::vector<LandmarkRow> rows;
  auto add = [&rows](const std::string& name, const ExponentValue& v) {
    rows.push_back({name, v.value, v.num, v.den, v.exact, v.in_region});
  };
  add("zeta_2", zeta_n(2));
  add("zeta_3", zeta_n(3));
  add("xi(1,1)", xi({1, 1}));
  add("xi(1,1,1)", xi({1, 1, 1}));
  add("xi(1^4)", xi({1, 1, 1, 1}));
  add("xi_tilde(1,1)", xi_tilde({1, 1}));
  add("xi_tilde(1,1,1)", xi_tilde({1, 1, 1}));
  add("eta(7)", eta_fn(7));
  add("zeta(2,2)", zeta_2_lambda(2));
  for (const auto& d : dimensions())
    rows.push_back({"dim_" + d.name, d.value, d.num, d.den, true, !d.continuation});
  return rows;
}

}  // namespace slelab::expo
