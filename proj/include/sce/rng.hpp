// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace sce {

// splitmix64 finalizer; used only to derive well-separated seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Derives the seed of an independent substream from a master seed and a
/// path of indices, e.g. (seed, {kBootstrap, replicate}). The same path
/// always yields the same stream regardless of thread scheduling.
inline std::uint64_t substream_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t part : path) {
    h = splitmix64(h ^ splitmix64(part + 0x632BE59BD9B4E019ULL));
  }
  return h;
}

// Fixed tags for substream derivation paths.
namespace stream_tag {
constexpr std::uint64_t kData = 1;
constexpr std::uint64_t kBootstrap = 2;
constexpr std::uint64_t kSplit = 3;
constexpr std::uint64_t kKDraws = 4;
}  // namespace stream_tag

/// Deterministic random stream. mt19937_64 output is pinned by the C++
/// standard and the normal sampler is hand-rolled (Marsaglia polar), so a
/// given seed produces the same sequence on every platform.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) {
    std::uint64_t a = splitmix64(seed);
    std::uint64_t b = splitmix64(a);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    engine_.seed(seq);
  }

  /// Uniform on [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

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
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  int bernoulli(double p) { return uniform01() < p ? 1 : 0; }

  /// Uniform on {0, ..., n-1}.
  std::size_t uniform_index(std::size_t n) {
    std::size_t i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sce
