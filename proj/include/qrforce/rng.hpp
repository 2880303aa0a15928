#pragma once

#include <cstdint>
#include <random>

namespace qrf {

std::uint64_t splitmix64(std::uint64_t x);

// Seedable 64-bit stream: std::mt19937_64 whose seed is the SplitMix64 mix of
// the user seed. split(i) derives an independent child stream from
// (seed, i), so chunked parallel runs do not depend on the worker count.
// See docs/rng.md.
class Rng
{
public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  Rng split(std::uint64_t stream) const;

  std::uint64_t next() { return engine_(); }
  // Uniform double in [0, 1) from the top 53 bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

} // namespace qrf
