// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <limits>

#include "loraseq/error.hpp"
#include "loraseq/stats.hpp"

namespace loraseq::stats {

namespace {

constexpr int kMaxIterations = 500;
constexpr double kEpsilon = 1e-16;
constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a, b) (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEpsilon) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x, double one_minus_x) {
  if (x <= 0.0) return 0.0;
  if (one_minus_x <= 0.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log(one_minus_x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, one_minus_x) / b;
}

double two_tailed_p(double t, std::size_t df) {
  if (df < 1) throw ConfigError("Student t requires df >= 1");
  if (std::isinf(t)) return 0.0;
  const double nu = static_cast<double>(df);
  const double t2 = t * t;
  return incomplete_beta(0.5 * nu, 0.5, nu / (nu + t2), t2 / (nu + t2));
}

double t_cdf(double t, std::size_t df) {
  const double tail = 0.5 * two_tailed_p(t, df);
  return t >= 0.0 ? 1.0 - tail : tail;
}

double critical_value(double alpha, std::size_t df) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("significance level must lie in (0, 1)");
  double lo = 0.0;
  double hi = 1.0;
  while (two_tailed_p(hi, df) > alpha) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw EvalError("critical value search did not bracket alpha");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (two_tailed_p(mid, df) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace loraseq::stats
