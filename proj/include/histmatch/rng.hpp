#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace histmatch {

// Every random decision in the library is keyed by an explicit
// (seed, stream, index...) chain of mix64 calls, so results do not depend on
// thread count or evaluation order.

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ull;

constexpr std::uint64_t splitmix_fin(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

// Deterministic stream derivation: mix64(seed, tag), chainable.
constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return splitmix_fin(a + kGoldenGamma * (b + 0x243f6a8885a308d3ull));
}

// Counter-based splitmix64 generator with hand-rolled variate transforms.
// std::random distributions are implementation-defined; these are not, which
// keeps banks and wave traces byte-stable across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(splitmix_fin(seed + kGoldenGamma)) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : Rng(mix64(seed, stream)) {}

  std::uint64_t next_u64() {
    state_ += kGoldenGamma;
    return splitmix_fin(state_);
  }

  // uniform on [0,1)
  double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform on (0,1], safe under log()
  double u01_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

  // Box-Muller, uncached: fixed consumption of two words per draw.
  double normal() {
    const double u1 = u01_pos();
    const double u2 = u01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  double cauchy(double scale) {
    return scale * std::tan(std::numbers::pi * (u01() - 0.5));
  }

  double half_cauchy(double scale) { return std::abs(cauchy(scale)); }

  // Bernoulli-sum draw; all model trial counts here are tiny (n <= 20).
  int binomial(int n, double p) {
    int y = 0;
    for (int i = 0; i < n; ++i) y += (u01() < p) ? 1 : 0;
    return y;
  }

 private:
  std::uint64_t state_;
};

}  // namespace histmatch
