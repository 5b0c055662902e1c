#pragma once

#include <cstdint>
#include <random>

namespace trajrl {

/// Deterministic random stream. mt19937_64 supplies the bits; the uniform
/// and normal transforms are spelled out here instead of using
/// std::*_distribution, whose output is implementation-defined. Reports
/// must be byte-identical for a given seed on any toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream derived from (seed, stream, substream), so group
  /// members can be sampled concurrently or serially with identical results.
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t substream = 0);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; consumes exactly two uniforms per draw.
  double normal();

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer, used for seed mixing.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace trajrl
