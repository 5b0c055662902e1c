#include "trajrl/rng.hpp"

#include <cmath>
#include <numbers>

namespace trajrl {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t substream) {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ splitmix64(stream_id + 0x1D8E4E27C47D124FULL));
  s = splitmix64(s ^ splitmix64(substream + 0xA2B7E9F3C5D81143ULL));
  return Rng(s);
}

double Rng::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log1p(-u1));  // u1 < 1, so 1-u1 > 0
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace trajrl
