#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

namespace oddsgeom {

// Derives an independent stream seed from (seed, tag). splitmix64 finalizer.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Deterministic random source. mt19937_64 is fully specified by the
// standard and the derived distributions below are hand-rolled, so the
// same seed produces the same stream on every platform and compiler.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

  // Uniform on the open interval (0, 1).
  double uniform01() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Log-uniform on [lo, hi]; used for positive ratio-like draws.
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  // Standard normal via Box-Muller (no cached second value).
  double normal() {
    double u1 = uniform01();
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
  }

  // Uniform point in the interior of the (n-1)-simplex: normalized
  // exponential draws.
  template <std::size_t N>
  std::array<double, N> simplex_point() {
    std::array<double, N> e{};
    double total = 0.0;
    for (auto& x : e) {
      x = -std::log(uniform01());
      total += x;
    }
    for (auto& x : e) x /= total;
    return e;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace oddsgeom
