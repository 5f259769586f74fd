#pragma once

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "camgeo/types.hpp"

namespace camgeo {

/// splitmix64 step; used to derive independent sub-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Deterministic per-task seed from (seed, a, b); each distinct triple
/// yields an independent stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64(s);
  s ^= a * 0xD6E8FEB86659FD93ull;
  h ^= splitmix64(s);
  s ^= b * 0xCA5A826395121157ull;
  h ^= splitmix64(s);
  return h;
}

/// Standard-normal sampler with a fully specified algorithm (polar
/// Box-Muller over mt19937_64), so streams are identical across
/// standard libraries.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
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
    have_spare_ = true;
    return u * m;
  }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n).
  std::uint64_t uniform_below(std::uint64_t n) {
    // modulo bias is negligible for the small n used here, but stay exact
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do { x = rng_(); } while (x >= limit);
    return x % n;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// First n entries of a seeded Fisher-Yates shuffle of 0..total-1,
/// sorted ascending: a without-replacement sample that is independent
/// of draw order.
inline std::vector<int> sample_without_replacement(int n, int total, std::uint64_t seed) {
  if (n < 0 || n > total) throw std::invalid_argument("sample: need 0 <= n <= total");
  GaussianSampler rng(seed);
  std::vector<int> order(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i) order[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < n; ++i) {
    const int j = i + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(total - i)));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }
  order.resize(static_cast<std::size_t>(n));
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace camgeo
