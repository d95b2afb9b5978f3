#pragma once

// All randomness in the library flows through `Rng`, a std::mt19937_64 engine.
// Bounded integers and shuffles are derived from raw engine output with the
// algorithms below rather than <random> distributions, whose output is
// implementation-defined. A given seed therefore yields the same splits and
// bootstrap samples on every platform.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "udeed/core.hpp"

namespace udeed {

/// SplitMix64 finalizer, used to derive independent seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Seed for stream `index` under `master`: splitmix64(master ^ splitmix64(index)).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(master ^ splitmix64(index));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n) by rejection on the top of the 64-bit range.
  std::size_t uniform_index(std::size_t n) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "uniform_index over an empty range");
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    std::uint64_t u = engine_();
    while (u >= limit) u = engine_();
    return static_cast<std::size_t>(u % bound);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Fisher-Yates, walking from the back.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = uniform_index(i);
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace udeed
