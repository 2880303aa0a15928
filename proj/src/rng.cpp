#include "qrforce/rng.hpp"

namespace qrf {

namespace {
constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64(std::uint64_t x)
{
  x += golden_gamma;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed)
: seed_(seed), engine_(splitmix64(seed))
{}

Rng Rng::split(std::uint64_t stream) const
{
  return Rng(splitmix64(seed_ ^ splitmix64(stream + 1) * golden_gamma));
}

} // namespace qrf
