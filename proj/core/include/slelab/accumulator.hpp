#ifndef SLELAB_ACCUMULATOR_HPP
#define SLELAB_ACCUMULATOR_HPP

#include <cmath>
#include <cstdint>

namespace slelab::mc {

/// Mergeable first/second-moment accumulator. merge is associative and
/// commutative; chunked runs merged in chunk order reproduce bit-identical
/// results regardless of worker count.
struct Accumulator {
  std::int64_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double x) {
    ++count;
    sum += x;
    sum_sq += x * x;
  }

  double mean() const { return count > 0 ? sum / static_cast<double>(count) : 0.0; }

  /// Unbiased sample variance, clamped at zero.
  double variance() const {
    if (count < 2) return 0.0;
    double n = static_cast<double>(count);
    double v = (sum_sq - sum * sum / n) / (n - 1.0);
    return v > 0.0 ? v : 0.0;
  }

  double stderr_mean() const {
    return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
  }
};

inline Accumulator merge(const Accumulator& a, const Accumulator& b) {
  Accumulator out;
  out.count = a.count + b.count;
  out.sum = a.sum + b.sum;
  out.sum_sq = a.sum_sq + b.sum_sq;
  return out;
}

}  // namespace slelab::mc

#endif
