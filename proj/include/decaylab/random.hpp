#pragma once

#include <cstdint>

namespace decaylab {

/// SplitMix64. Small, fast and bit-identical across platforms, which the
/// standard distributions are not.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

/// Stateless hash of (seed, index) to [0, 1); lets per-mode randomness be
/// filled in any order.
inline double hashed_uniform(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed * 0xD1B54A32D192ED03ull ^ (index + 0x632BE59BD9B4E019ull));
  g.next();
  return g.uniform();
}

}  // namespace decaylab
