#pragma once

#include <cstdint>
#include <random>

namespace geomed {

// Addressable randomness: a master seed plus a stream counter. The same
// (master, stream) pair always produces the same draw sequence, and draws
// indexed by stream can be generated in any order or in parallel.
struct RngSeed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;

  RngSeed at_stream(std::uint64_t s) const { return RngSeed{master, s}; }
  // Derives an independent master key for a named sub-purpose so stream
  // ranges of different components never collide.
  RngSeed child(std::uint64_t tag) const;
};

std::uint64_t splitmix64(std::uint64_t& state);

class Rng {
 public:
  explicit Rng(RngSeed seed);

  // Uniform on [0, 1) with 53 random bits.
  double uniform01();
  // Uniform on {0, 1, ..., n-1}.
  std::uint64_t uniform_below(std::uint64_t n);
  // Standard exponential via inversion; finite for every uniform value.
  double exponential();
  // Standard normal via Box-Muller (cosine branch).
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace geomed
