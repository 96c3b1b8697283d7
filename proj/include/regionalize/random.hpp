#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace regionalize {

/// Seedable generator with a fixed, portable output sequence.
///
/// The engine is std::mt19937_64 (bit-exact across standard libraries).
/// Distributions are implemented here rather than with <random> adaptors,
/// whose algorithms are implementation-defined:
///   uniform()  = (next() >> 11) * 2^-53, in [0, 1)
///   below(n)   = min(floor(uniform() * n), n - 1)
///   normal()   = Box-Muller: r = sqrt(-2 ln(1 - u1)), returns r cos(2 pi u2),
///                then r sin(2 pi u2) on the following call
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::size_t below(std::size_t n) {
    auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Independent stream for restart `stream` of a run seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace regionalize
