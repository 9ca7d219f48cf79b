#pragma once

#include <cstdint>

namespace boxart {

/// Deterministic random stream. The draw sequence depends only on the seed,
/// never on the platform or standard library, so runs replay bit-for-bit
/// across machines. Single-owner: never share one stream across threads;
/// derive child streams instead.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  /// Next raw 64-bit draw (splitmix64).
  std::uint64_t next_u64();

  /// Uniform integer in [lo, hi], both ends inclusive.
  int uniform_int(int lo, int hi);

  /// Uniform double in [0, 1) with 53 bits of precision.
  double uniform_double();

  /// Poisson draw by inversion (sequential search). Exact for the small
  /// lambdas used here.
  int poisson(double lambda);

  /// Independent child stream for parallel work: seed = mix(seed, index).
  RandomStream child(std::uint64_t index) const;

  /// Stateless seed mixer used for child derivation and per-trial seeds.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t index);

 private:
  std::uint64_t state_;
  std::uint64_t seed_;
};

}  // namespace boxart
