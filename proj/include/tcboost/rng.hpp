#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace tcboost {

// All randomness in the toolkit flows from one master seed through named
// sub-streams. The generator is std::mt19937_64 (bit-exact by the C++
// standard); distribution sampling is implemented here rather than with
// std::*_distribution so that draws are identical across standard libraries.
//
// Sub-stream seeding: seed_seq over {seed, fnv1a64(name)}.
class Rng {
 public:
  Rng(std::uint64_t seed, std::string_view stream_name) {
    const std::uint64_t h = fnv1a64(stream_name);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
    engine_.seed(seq);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound), bound >= 1. Rejection sampling, unbiased.
  std::uint64_t uniform_int(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Standard normal via Box-Muller on cached pairs.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[static_cast<std::size_t>(uniform_int(i))]);
    }
  }

  /// k distinct indices drawn uniformly from [0, total), in draw order.
  std::vector<int> sample_without_replacement(int total, int k);

 private:
  static std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (const char ch : s) {
      h ^= static_cast<std::uint8_t>(ch);
      h *= 1099511628211ull;
    }
    return h;
  }

  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline std::vector<int> Rng::sample_without_replacement(int total, int k) {
  // Partial Fisher-Yates over an index pool.
  std::vector<int> pool(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i) pool[static_cast<std::size_t>(i)] = i;
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const auto j = static_cast<std::size_t>(i) + static_cast<std::size_t>(uniform_int(static_cast<std::uint64_t>(total - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    out.push_back(pool[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace tcboost
