// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace loraseq {

/// Deterministic random source for weight init, fixtures and data splits.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The distributions on top of it are implemented here rather than
/// taken from <random>, because the standard leaves those
/// implementation-defined:
///   - uniform():   top 53 bits of one draw, scaled to [0, 1)
///   - below(n):    rejection sampling on the top bits (unbiased)
///   - gaussian():  Box-Muller, one value per two uniforms, no caching
///
/// An instance is single-owner. Copying it forks the stream.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);
  double gaussian(double mean = 0.0, double stddev = 1.0);

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace loraseq
