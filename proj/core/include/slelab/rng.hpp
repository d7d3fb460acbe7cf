#ifndef SLELAB_RNG_HPP
#define SLELAB_RNG_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace slelab::rng {

/// Inverse of the standard normal CDF, |error| ~ 1e-16 (AS 241, PPND16).
double normal_icdf(double p);

/**
 * Counter-based random stream (Philox2x64-10, Salmon et al. 2011).
 *
 * The triple (seed, stream_id, position) fully determines every output:
 * the generator is a pure function of key = seed and counter =
 * (stream_id, block index), so streams can be handed to workers, replayed
 * and split without any shared state.  Distinct stream_ids under one seed
 * give statistically independent sequences.
 */
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_id_(stream_id) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Number of 64-bit words consumed so far.
  std::uint64_t position() const { return position_; }
  void set_position(std::uint64_t pos) { position_ = pos; }

  std::uint64_t next_u64();

  /// Uniform draw in the open interval (0, 1); 53-bit resolution.
  double next_uniform();

  /// Standard normal via the Wichura AS 241 inverse CDF (bit-stable).
  double next_gaussian() { return normal_icdf(next_uniform()); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t position_ = 0;
};

/// n independent N(0, dt) increments; advances the stream position.
std::vector<double> gaussian_increments(RandomStream& stream, std::size_t n,
                                        double dt);

}  // namespace slelab::rng

#endif
