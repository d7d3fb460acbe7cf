#include "slelab/rng.hpp"

#include <cmath>

namespace slelab::rng {

namespace {

constexpr std::uint64_t kPhiloxM = 0xD2B74407B1CE6E93ULL;
constexpr std::uint64_t kPhiloxW = 0x9E3779B97F4A7C15ULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

// Philox2x64-10: counter (c0, c1), key k.
inline void philox2x64(std::uint64_t c0, std::uint64_t c1, std::uint64_t key,
                       std::uint64_t& o0, std::uint64_t& o1) {
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi, lo;
    mulhilo(kPhiloxM, c0, hi, lo);
    c0 = hi ^ key ^ c1;
    c1 = lo;
    key += kPhiloxW;
  }
  o0 = c0;
  o1 = c1;
}

}  // namespace

std::uint64_t RandomStream::next_u64() {
  std::uint64_t block = position_ >> 1;
  std::uint64_t slot = position_ & 1;
  ++position_;
  std::uint64_t o0, o1;
  philox2x64(block, stream_id_, seed_, o0, o1);
  return slot == 0 ? o0 : o1;
}

double RandomStream::next_uniform() {
  // 53-bit mantissa, offset by 2^-54 so 0 and 1 are never returned.
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

double normal_icdf(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("normal_icdf: p must be in (0,1)");
  // Wichura (1988), algorithm AS 241, PPND16.
  static const double a[8] = {
      3.3871328727963666080e0,  1.3314166789178437745e2,
      1.9715909503065514427e3,  1.3731693765509461125e4,
      4.5921953931549871457e4,  6.7265770927008700853e4,
      3.3430575583588128105e4,  2.5090809287301226727e3};
  static const double b[8] = {
      1.0,                      4.2313330701600911252e1,
      6.8718700749205790830e2,  5.3941960214247511077e3,
      2.1213794301586595867e4,  3.9307895800092710610e4,
      2.8729085735721942674e4,  5.2264952788528545610e3};
  static const double c[8] = {
      1.42343711074968357734e0,  4.63033784615654529590e0,
      5.76949722146069140550e0,  3.64784832476320460504e0,
      1.27045825245236838258e0,  2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4};
  static const double d[8] = {
      1.0,                       2.05319162663775882187e0,
      1.67638483018380384940e0,  6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2,
      5.47593808499534494600e-4, 1.05075007164441684324e-9};
  static const double e[8] = {
      6.65790464350110377720e0,  5.46378491116411436990e0,
      1.78482653991729133580e0,  2.96560571828504891230e-1,
      2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7};
  static const double f[8] = {
      1.0,                       5.99832206555887937690e-1,
      1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-5,
      1.42151175831644588870e-7, 2.04426310338993978564e-15};

  auto poly = [](const double* k, double x) {
    return k[0] + x * (k[1] + x * (k[2] + x * (k[3] + x * (k[4] +
                  x * (k[5] + x * (k[6] + x * k[7]))))));
  };

  double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    double r = 0.180625 - q * q;
    return q * poly(a, r) / poly(b, r);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = poly(c, r) / poly(d, r);
  } else {
    r -= 5.0;
    val = poly(e, r) / poly(f, r);
  }
  return q < 0.0 ? -val : val;
}

std::vector<double> gaussian_increments(RandomStream& stream, std::size_t n,
                                        double dt) {
  if (n < 1) throw std::invalid_argument("gaussian_increments: n must be >= 1");
  if (!(dt > 0.0))
    throw std::invalid_argument("gaussian_increments: dt must be positive");
  std::vector<double> out(n);
  double s = std::sqrt(dt);
  for (std::size_t i = 0; i < n; ++i) out[i] = s * stream.next_gaussian();
  return out;
}

}  // namespace slelab::rng
