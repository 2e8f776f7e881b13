// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace loraseq::stats {

/// Two models' scores on the same tasks, aligned by index.
struct PairedSample {
  std::vector<std::string> labels;
  std::vector<double> a;
  std::vector<double> b;

  /// Throws DataError unless a and b (and labels, when given) share a length
  /// of at least 2.
  void validate() const;
};

struct TStatistic {
  double t;
  std::size_t df;
};

/// d_i = a_i - b_i,  t = sum(d) / sqrt((n sum(d^2) - sum(d)^2) / (n - 1)),
/// df = n - 1. Throws DegenerateSampleError when every difference is equal.
TStatistic paired_t(const PairedSample& sample);

/// The same statistic written as mean(d) / (s_d / sqrt(n)).
double paired_t_textbook(const PairedSample& sample);

struct MeanVar {
  double mean;
  double variance;  // n - 1 denominator
};

/// Throws DataError for fewer than two values.
MeanVar sample_mean_var(std::span<const double> xs);

/// Regularized incomplete beta I_x(a, b), evaluated with the Lentz continued
/// fraction on whichever side of the mean converges faster. `one_minus_x`
/// lets callers pass 1 - x without cancellation.
double incomplete_beta(double a, double b, double x, double one_minus_x);

/// Student-t CDF with `df` degrees of freedom (df >= 1).
double t_cdf(double t, std::size_t df);

/// 2 * (1 - t_cdf(|t|, df)), evaluated directly from the incomplete beta so
/// small tail probabilities keep their relative accuracy.
double two_tailed_p(double t, std::size_t df);

/// t* with two_tailed_p(t*, df) == alpha, by bisection.
double critical_value(double alpha, std::size_t df);

struct TTestReport {
  std::size_t n = 0;
  std::size_t df = 0;
  double mean_a = 0.0;
  double mean_b = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
  double sum_d = 0.0;
  double sum_d2 = 0.0;
  double t = 0.0;
  double p_two_tailed = 1.0;
  double alpha = 0.05;
  double critical = 0.0;
  bool reject = false;

  std::string verdict() const;
};

/// Full two-tailed paired test. `df_override` replaces n - 1 for the p-value
/// and critical value (the statistic itself is unchanged).
TTestReport compare_models(const PairedSample& sample, double alpha,
                           std::optional<std::size_t> df_override = std::nullopt);

/// Published or otherwise expected values to be checked against a report.
struct ExpectedValues {
  std::optional<double> t;
  std::optional<double> p;
  std::optional<double> df;
  std::optional<double> critical;
  std::optional<double> mean_a;
  std::optional<double> mean_b;
  std::optional<double> var_a;
  std::optional<double> var_b;
  std::optional<double> n;
  double tolerance = 0.01;

  bool empty() const;
};

struct ExpectedCheck {
  std::string field;
  double expected;
  double computed;
  bool matches;
};

std::vector<ExpectedCheck> check_expected(const TTestReport& report, const ExpectedValues& expected);

nlohmann::ordered_json to_json(const TTestReport& report);
nlohmann::ordered_json to_json(const std::vector<ExpectedCheck>& checks);

}  // namespace loraseq::stats
