#pragma once

// Counter-based pseudo-randomness (splitmix64) with documented seed
// splitting, so any trial of any sweep can be reproduced in isolation.
//
// Stream derivation: child = mix64(parent ^ mix64(index + GOLDEN)), folded
// left-to-right over the index path. run_experiment derives
//   trial stream   = derive_seed(master_seed, {sweep_index, trial, channel})
// with channel 0 = instance (w*), 1 = training draws, 2 = evaluation draws.

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace massart {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

/// splitmix64 finalizer.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t derive_seed(
    std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = mix64(master ^ kGolden);
  for (std::uint64_t p : path) s = mix64(s ^ (p + kGolden));
  return s;
}

/// splitmix64: a Weyl counter fed through mix64. Satisfies
/// UniformRandomBitGenerator; copyable state makes streams replayable.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  constexpr result_type operator()() {
    state_ += kGolden;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

/// Deterministic scalar draws on top of SplitMix64. All distributions are
/// implemented here (not via <random>) so a seed pins the exact byte
/// sequence independent of the standard library.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool coin() { return (bits() >> 63) != 0; }

  /// Standard normal via the Marsaglia polar method; the spare value is
  /// cached, so draws come in deterministic pairs.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

 private:
  SplitMix64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace massart
