#include "geomed/rng.hpp"

#include <cmath>
#include <numbers>

namespace geomed {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {
std::uint64_t mix_seed(const RngSeed& s) {
  std::uint64_t state = s.master;
  std::uint64_t a = splitmix64(state);
  state ^= s.stream * 0x9e3779b97f4a7c15ULL;
  std::uint64_t b = splitmix64(state);
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}
}  // namespace

RngSeed RngSeed::child(std::uint64_t tag) const {
  std::uint64_t state = master ^ (tag * 0xd1342543de82ef95ULL);
  return RngSeed{splitmix64(state), stream};
}

Rng::Rng(RngSeed seed) : engine_(mix_seed(seed)) {}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_below(std::uint64_t n) {
  // Rejection sampling keeps the distribution exactly uniform.
  const std::uint64_t limit = n * (UINT64_MAX / n);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double Rng::exponential() {
  // -log1p(-u) maps [0,1) to [0, inf) without ever taking log(0).
  return -std::log1p(-uniform01());
}

double Rng::normal() {
  const double u1 = 1.0 - uniform01();  // (0, 1]
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace geomed
