#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace bohr {

/// splitmix64 finalizer; used to derive independent per-task seeds from
/// (seed, task index) so results do not depend on execution order.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t task) {
  return mix_seed(seed ^ mix_seed(task + 0x632be59bd9b4e019ULL));
}

/// mt19937_64 with explicitly specified conversions, so streams are
/// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Haar-uniform angle in [0, 2 pi).
  double angle() { return 2.0 * std::numbers::pi * uniform(); }

  double sign() { return (engine_() >> 63) ? 1.0 : -1.0; }

  /// Standard normal via Box-Muller (one value per call).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bohr
