// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <numeric>

#include "loraseq/error.hpp"
#include "loraseq/stats.hpp"

namespace loraseq::stats {

namespace {

std::vector<double> differences(const PairedSample& s) {
  s.validate();
  std::vector<double> d(s.a.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = s.a[i] - s.b[i];
  if (std::all_of(d.begin(), d.end(), [&](double v) { return v == d.front(); })) {
    throw DegenerateSampleError(
        "degenerate sample: every paired difference equals " + std::to_string(d.front()) +
        ", so the t statistic is undefined");
  }
  return d;
}

}  // namespace

void PairedSample::validate() const {
  if (a.size() != b.size()) {
    throw DataError("paired sample has " + std::to_string(a.size()) + " and " +
                    std::to_string(b.size()) + " scores");
  }
  if (!labels.empty() && labels.size() != a.size()) throw DataError("paired sample labels misaligned");
  if (a.size() < 2) throw DataError("need >= 2 paired observations, got " + std::to_string(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i]) || !std::isfinite(b[i])) throw DataError("paired sample has a non-finite score");
  }
}

TStatistic paired_t(const PairedSample& sample) {
  const auto d = differences(sample);
  const double n = static_cast<double>(d.size());
  double sum_d = 0.0;
  double sum_d2 = 0.0;
  for (double v : d) {
    sum_d += v;
    sum_d2 += v * v;
  }
  const double radicand = (n * sum_d2 - sum_d * sum_d) / (n - 1.0);
  if (!(radicand > 0.0)) throw DegenerateSampleError("degenerate sample: zero variance of differences");
  return {sum_d / std::sqrt(radicand), d.size() - 1};
}

double paired_t_textbook(const PairedSample& sample) {
  const auto d = differences(sample);
  const auto [mean, var] = sample_mean_var(d);
  return mean / (std::sqrt(var) / std::sqrt(static_cast<double>(d.size())));
}

MeanVar sample_mean_var(std::span<const double> xs) {
  if (xs.size() < 2) throw DataError("sample variance needs at least 2 values");
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, ss / (n - 1.0)};
}

std::string TTestReport::verdict() const {
  return reject ? "reject the null hypothesis" : "fail to reject the null hypothesis";
}

TTestReport compare_models(const PairedSample& sample, double alpha,
                           std::optional<std::size_t> df_override) {
  const TStatistic stat = paired_t(sample);
  TTestReport r;
  r.n = sample.a.size();
  r.df = df_override.value_or(stat.df);
  if (r.df < 1) throw ConfigError("degrees of freedom must be at least 1");
  const auto ma = sample_mean_var(sample.a);
  const auto mb = sample_mean_var(sample.b);
  r.mean_a = ma.mean;
  r.mean_b = mb.mean;
  r.var_a = ma.variance;
  r.var_b = mb.variance;
  for (std::size_t i = 0; i < r.n; ++i) {
    const double d = sample.a[i] - sample.b[i];
    r.sum_d += d;
    r.sum_d2 += d * d;
  }
  r.t = stat.t;
  r.alpha = alpha;
  r.p_two_tailed = two_tailed_p(r.t, r.df);
  r.critical = critical_value(alpha, r.df);
  r.reject = r.p_two_tailed < alpha;
  return r;
}

bool ExpectedValues::empty() const {
  return !t && !p && !df && !critical && !mean_a && !mean_b && !var_a && !var_b && !n;
}

std::vector<ExpectedCheck> check_expected(const TTestReport& r, const ExpectedValues& e) {
  std::vector<ExpectedCheck> out;
  auto check = [&](const char* field, const std::optional<double>& expected, double computed) {
    if (!expected) return;
    out.push_back({field, *expected, computed, std::abs(*expected - computed) <= e.tolerance});
  };
  check("n", e.n, static_cast<double>(r.n));
  check("df", e.df, static_cast<double>(r.df));
  check("mean_a", e.mean_a, r.mean_a);
  check("mean_b", e.mean_b, r.mean_b);
  check("var_a", e.var_a, r.var_a);
  check("var_b", e.var_b, r.var_b);
  check("t", e.t, r.t);
  check("p_two_tailed", e.p, r.p_two_tailed);
  check("critical", e.critical, r.critical);
  return out;
}

nlohmann::ordered_json to_json(const TTestReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["df"] = r.df;
  j["mean_a"] = r.mean_a;
  j["mean_b"] = r.mean_b;
  j["var_a"] = r.var_a;
  j["var_b"] = r.var_b;
  j["sum_d"] = r.sum_d;
  j["sum_d2"] = r.sum_d2;
  j["t"] = r.t;
  j["p_two_tailed"] = r.p_two_tailed;
  j["alpha"] = r.alpha;
  j["critical"] = r.critical;
  j["reject"] = r.reject;
  j["verdict"] = r.verdict();
  return j;
}

nlohmann::ordered_json to_json(const std::vector<ExpectedCheck>& checks) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    arr.push_back({{"field", c.field},
                   {"expected", c.expected},
                   {"computed", c.computed},
                   {"matches", c.matches}});
  }
  return arr;
}

}  // namespace loraseq::stats
