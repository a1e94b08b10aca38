#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace spot {

namespace detail {

// splitmix64; used to spread seeds and to derive substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/**
 * Seeded random source used everywhere in the toolkit.
 *
 * The underlying generator is mt19937_64, whose output sequence is fixed
 * by the C++ standard. The distributions below are implemented by hand
 * (standard-library distributions are not portable across implementations),
 * so the same seed reproduces the same stream on every platform and
 * compiler.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed)
      : seed_(seed), gen_(detail::splitmix64(seed)) {}

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal deviate via Box-Muller; consumes exactly two uniforms.
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Uniform index in {0, ..., n-1}; n must be positive.
  std::size_t index(std::size_t n) {
    const auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return k < n ? k : n - 1;
  }

  /// Uniform random permutation of {0, ..., n-1} (Fisher-Yates).
  std::vector<std::size_t> permutation(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    for (std::size_t i = n; i > 1; --i) {
      std::swap(p[i - 1], p[index(i)]);
    }
    return p;
  }

  /**
   * Independent substream keyed on (construction seed, stream id).
   * Derivation ignores how much of this stream has been consumed, so
   * substreams are reproducible regardless of call order.
   */
  Rng derive(std::uint64_t stream) const {
    return Rng(detail::splitmix64(seed_ ^ detail::splitmix64(stream + 1)));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace spot
