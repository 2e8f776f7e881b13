// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "loraseq/error.hpp"
#include "loraseq/rng.hpp"
#include "loraseq/stats.hpp"

using namespace loraseq;
using namespace loraseq::stats;

namespace {

// Closed-form Student-t CDFs for small integer df.
double cdf_df1(double t) { return 0.5 + std::atan(t) / std::numbers::pi; }
double cdf_df2(double t) { return 0.5 + t / (2.0 * std::sqrt(2.0 + t * t)); }
double cdf_df4(double t) {
  const double u = 1.0 + t * t / 4.0;
  return 0.5 + 0.375 * t / std::sqrt(u) * (1.0 - t * t / (12.0 * u));
}

PairedSample three_task_pairs() { return {{"ner", "pos", "dep"}, {89, 89, 73}, {90, 97, 97}}; }

PairedSample random_sample(SeededRng& rng) {
  PairedSample s;
  const std::size_t n = 2 + rng.below(12);
  for (std::size_t i = 0; i < n; ++i) {
    s.labels.push_back("x" + std::to_string(i));
    s.a.push_back(rng.uniform(50, 100));
    s.b.push_back(rng.uniform(50, 100));
  }
  return s;
}

}  // namespace

TEST_SUITE("stats") {
  TEST_CASE("t CDF matches closed forms") {
    for (double t = -12.0; t <= 12.0; t += 0.37) {
      CAPTURE(t);
      CHECK(std::fabs(t_cdf(t, 1) - cdf_df1(t)) < 1e-10);
      CHECK(std::fabs(t_cdf(t, 2) - cdf_df2(t)) < 1e-10);
      CHECK(std::fabs(t_cdf(t, 4) - cdf_df4(t)) < 1e-10);
    }
    CHECK(t_cdf(0.0, 9) == doctest::Approx(0.5).epsilon(1e-15));
    // Reference values from an independent implementation.
    CHECK(std::fabs(t_cdf(-3.5, 7) - 0.004996520440942772) < 1e-12);
    CHECK(std::fabs(t_cdf(0.3, 30) - 0.6168769473578236) < 1e-12);
  }

  TEST_CASE("incomplete beta edge values and symmetry") {
    CHECK(incomplete_beta(2.0, 3.0, 0.0, 1.0) == 0.0);
    CHECK(incomplete_beta(2.0, 3.0, 1.0, 0.0) == 1.0);
    // I_x(1, 1) = x and I_x(a, b) = 1 - I_{1-x}(b, a).
    CHECK(incomplete_beta(1.0, 1.0, 0.3, 0.7) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(incomplete_beta(2.5, 0.5, 0.2, 0.8) ==
          doctest::Approx(1.0 - incomplete_beta(0.5, 2.5, 0.8, 0.2)).epsilon(1e-12));
  }

  TEST_CASE("critical values invert the two-tailed p-value") {
    CHECK(std::fabs(critical_value(0.05, 4) - 2.7764451051977987) < 1e-9);
    CHECK(std::fabs(critical_value(0.05, 2) - 4.302652729696142) < 1e-9);
    for (double alpha : {0.10, 0.05, 0.01})
      for (std::size_t df = 1; df <= 30; ++df) {
        CAPTURE(alpha);
        CAPTURE(df);
        CHECK(std::fabs(two_tailed_p(critical_value(alpha, df), df) - alpha) < 1e-8);
      }
  }

  TEST_CASE("paired statistic on the three-task F1 pairs") {
    const auto s = three_task_pairs();
    auto t = paired_t(s);
    CHECK(t.df == 2);
    CHECK(t.t == doctest::Approx(-33.0 / std::sqrt(417.0)).epsilon(1e-14));
    CHECK(paired_t_textbook(s) == doctest::Approx(t.t).epsilon(1e-12));
    auto r = compare_models(s, 0.05);
    CHECK(r.sum_d == -33.0);
    CHECK(r.sum_d2 == 641.0);
    CHECK(r.mean_a == doctest::Approx(251.0 / 3.0));
    CHECK(r.mean_b == doctest::Approx(284.0 / 3.0));
    CHECK(r.var_a == doctest::Approx(256.0 / 3.0));
    CHECK(r.var_b == doctest::Approx(49.0 / 3.0));
    CHECK(r.p_two_tailed == doctest::Approx(1.0 - std::fabs(t.t) / std::sqrt(2.0 + t.t * t.t)).epsilon(1e-10));
    CHECK(r.critical == doctest::Approx(4.302652729696142));
    CHECK_FALSE(r.reject);
    CHECK(r.verdict() == "fail to reject the null hypothesis");

    auto forced = compare_models(s, 0.05, 4);
    CHECK(forced.df == 4);
    CHECK(forced.t == r.t);
    CHECK(forced.critical == doctest::Approx(2.776445105).epsilon(1e-9));
  }

  TEST_CASE("expected-value checks flag mismatched reference values") {
    ExpectedValues e;
    e.t = 0.12;
    e.df = 4;
    e.mean_a = 83.67;
    e.mean_b = 94.67;
    e.var_a = 85.31;
    e.var_b = 16.34;
    e.tolerance = 0.05;
    auto checks = check_expected(compare_models(three_task_pairs(), 0.05), e);
    REQUIRE(checks.size() == 6);
    for (const auto& c : checks) {
      CAPTURE(c.field);
      CHECK(c.matches == (c.field != "t" && c.field != "df"));
    }
  }

  TEST_CASE("antisymmetry, shift and scale invariance") {
    SeededRng rng(77);
    for (int trial = 0; trial < 300; ++trial) {
      auto s = random_sample(rng);
      const double t = paired_t(s).t;
      PairedSample swapped{s.labels, s.b, s.a};
      CHECK(paired_t(swapped).t == doctest::Approx(-t).epsilon(1e-9));

      PairedSample shifted = s, rescaled = s;
      const double c = rng.uniform(-40, 40), k = rng.uniform(0.1, 20);
      for (std::size_t i = 0; i < s.a.size(); ++i) {
        shifted.a[i] += c;
        shifted.b[i] += c;
        rescaled.a[i] *= k;
        rescaled.b[i] *= k;
      }
      CHECK(paired_t(shifted).t == doctest::Approx(t).epsilon(1e-7));
      CHECK(paired_t(rescaled).t == doctest::Approx(t).epsilon(1e-9));
      CHECK(paired_t_textbook(s) == doctest::Approx(t).epsilon(1e-9));
    }
  }

  TEST_CASE("degenerate and undersized samples") {
    PairedSample equal{{"a", "b", "c"}, {1, 2, 3}, {1, 2, 3}};
    CHECK_THROWS_AS(paired_t(equal), DegenerateSampleError);
    PairedSample constant_shift{{"a", "b"}, {1, 2}, {3, 4}};
    CHECK_THROWS_AS(paired_t(constant_shift), DegenerateSampleError);
    PairedSample one{{"a"}, {1}, {2}};
    CHECK_THROWS_AS(paired_t(one), DataError);
    PairedSample ragged{{"a", "b"}, {1, 2}, {3}};
    CHECK_THROWS_AS(paired_t(ragged), DataError);
    const double xs[] = {1.0};
    CHECK_THROWS_AS(sample_mean_var(xs), DataError);
  }

  TEST_CASE("report JSON mirrors the report fields") {
    auto r = compare_models(three_task_pairs(), 0.05);
    auto j = to_json(r);
    for (const char* key : {"n", "df", "mean_a", "mean_b", "var_a", "var_b", "sum_d", "sum_d2", "t",
                            "p_two_tailed", "alpha", "critical", "reject"})
      CHECK(j.contains(key));
    CHECK(j["t"].get<double>() == r.t);
  }
}
