#include "boxart/rng.hpp"

#include <cmath>
#include <limits>

#include "boxart/error.hpp"

namespace boxart {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix_step(std::uint64_t& state) {
  state += kGolden;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : state_(seed), seed_(seed) {}

std::uint64_t RandomStream::next_u64() { return splitmix_step(state_); }

int RandomStream::uniform_int(int lo, int hi) {
  if (lo > hi) throw Error(ErrorCode::InvalidArgs, "uniform_int: lo > hi");
  const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (range == 0) {  // full 64-bit span; cannot happen for int bounds, kept for safety
    return static_cast<int>(next_u64());
  }
  // Rejection sampling keeps the draw unbiased and platform-independent.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<int>(lo + static_cast<long long>(x % range));
}

double RandomStream::uniform_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int RandomStream::poisson(double lambda) {
  if (lambda <= 0.0) throw Error(ErrorCode::InvalidArgs, "poisson: lambda must be positive");
  const double u = uniform_double();
  double p = std::exp(-lambda);
  double cdf = p;
  int k = 0;
  while (u > cdf && k < 1 << 20) {
    ++k;
    p *= lambda / k;
    cdf += p;
  }
  return k;
}

RandomStream RandomStream::child(std::uint64_t index) const {
  return RandomStream(mix(seed_, index));
}

std::uint64_t RandomStream::mix(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed ^ (kGolden * (index + 1));
  splitmix_step(state);
  return splitmix_step(state);
}

}  // namespace boxart
