#pragma once

#include <cmath>
#include <cstdint>

#include "cohmap/units.hpp"

namespace cohmap {

namespace detail {
// SplitMix64 finalizer. Full avalanche on 64 bits.
constexpr uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}
inline constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}  // namespace detail

// Counter-based generator. A (key, counter) pair maps to one 64-bit output
// through a Weyl-sequence + SplitMix64 finalizer, so every keyed stream is
// independent, stateless across streams, and reproducible for any thread
// count or evaluation order.
class CounterRng {
 public:
  struct Key {
    uint64_t seed = 0;
    uint32_t stream = 0;     // frame kind or other channel id
    uint32_t tau_index = 0;  // position in the acquisition tau sweep
    uint32_t frame = 0;
    uint32_t pixel = 0;
  };

  explicit CounterRng(const Key& k) {
    uint64_t h = detail::mix64(k.seed + detail::kGolden);
    h = detail::mix64(h ^ ((uint64_t(k.stream) << 32) | uint64_t(k.tau_index)));
    h = detail::mix64(h ^ ((uint64_t(k.frame) << 32) | uint64_t(k.pixel)));
    base_ = h;
  }

  uint64_t next_u64() { return detail::mix64(base_ + (++counter_) * detail::kGolden); }

  // Uniform on the open interval (0, 1); safe under log().
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Box-Muller. Two uniforms per draw, no cached second value, so the
  // stream position stays a pure function of the draw count.
  double next_normal(double mean, double sigma) {
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sigma * r * std::cos(kTwoPi * u2);
  }

  // Knuth inversion below kPoissonNormalCutoff, normal approximation above.
  // Means in the camera forward model sit far above the cutoff, where the
  // approximation error is negligible.
  uint64_t next_poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < kPoissonNormalCutoff) {
      const double limit = std::exp(-mean);
      uint64_t n = 0;
      double prod = 1.0;
      do {
        prod *= next_unit();
        ++n;
      } while (prod > limit);
      return n - 1;
    }
    const double x = std::round(next_normal(mean, std::sqrt(mean)));
    return x < 0.0 ? 0 : static_cast<uint64_t>(x);
  }

  static constexpr double kPoissonNormalCutoff = 30.0;

 private:
  uint64_t base_ = 0;
  uint64_t counter_ = 0;
};

}  // namespace cohmap
