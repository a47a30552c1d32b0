#pragma once

#include <cmath>
#include <cstdint>

namespace seqrnn {

// splitmix64: 64-bit state, one multiply/xorshift pipeline per draw.
// (Steele, Lea & Flood, OOPSLA 2014.) Chosen for bit-reproducible
// experiments; the algorithm is fixed, do not swap it out.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform integer in [lo, hi], both inclusive.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
    return lo + static_cast<std::uint64_t>(
                    next_double() * static_cast<double>(hi - lo + 1));
  }

  // Standard normal via Box-Muller. Two uniforms per draw, no cached
  // spare, so the draw count per call is constant.
  double gaussian() {
    double u1 = next_double();
    double u2 = next_double();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  // Independent child stream. Per-sequence / per-column draws go through
  // streams so the output does not depend on outer loop structure.
  Rng stream(std::uint64_t index) const {
    Rng child(state_ ^ (0xA0761D6478BD642FULL * (index + 1)));
    child.next_u64();
    return child;
  }

 private:
  static constexpr double kTwoPi = 6.28318530717958647692;
  std::uint64_t state_;
};

}  // namespace seqrnn
