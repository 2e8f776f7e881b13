// SPDX-License-Identifier: Apache-2.0
#include "loraseq/rng.hpp"

#include <cmath>
#include <numbers>

namespace loraseq {

double SeededRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t SeededRng::below(std::uint64_t n) {
  // Smallest all-ones mask covering n - 1, then reject draws >= n.
  std::uint64_t mask = n - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  for (;;) {
    std::uint64_t v = engine_() & mask;
    if (v < n) return v;
  }
}

double SeededRng::gaussian(double mean, double stddev) {
  // 1 - u keeps the log argument in (0, 1].
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  return mean + stddev * r * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace loraseq
