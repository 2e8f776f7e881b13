// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "loraseq/error.hpp"
#include "loraseq/numerics.hpp"
#include "loraseq/rng.hpp"
#include "support.hpp"

using namespace loraseq;
using loraseq::testing::naive_matmul;

TEST_SUITE("numerics") {
  TEST_CASE("matrix construction validates shapes") {
    CHECK_THROWS_AS(Matrix(2, 3, std::vector<double>(5)), ShapeError);
    CHECK_THROWS_AS((Matrix{{1.0, 2.0}, {3.0}}), ShapeError);
    Matrix m{{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}};
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(m(1, 2) == 6.0);
    CHECK(m.shape_string() == "2x3");
    CHECK(Matrix::identity(3)(1, 1) == 1.0);
    CHECK(Matrix::identity(3)(1, 2) == 0.0);
    Matrix empty(0, 4);
    CHECK(empty.empty());
  }

  TEST_CASE("matmul family matches a long-double triple loop") {
    SeededRng rng(1);
    const std::size_t dims[] = {0, 1, 3, 4, 7, 16, 33};
    for (std::size_t r : dims)
      for (std::size_t k : dims)
        for (std::size_t c : {std::size_t{1}, std::size_t{5}, std::size_t{17}}) {
          Matrix a = random_normal(r, k, rng);
          Matrix b = random_normal(k, c, rng);
          Matrix expect = naive_matmul(a, b);
          CHECK(max_abs_diff(matmul(a, b), expect) < 1e-12);
          CHECK(max_abs_diff(matmul_nt(a, transpose(b)), expect) < 1e-12);
          CHECK(max_abs_diff(matmul_tn(transpose(a), b), expect) < 1e-12);
        }
  }

  TEST_CASE("shape mismatches are reported") {
    CHECK_THROWS_AS(matmul(Matrix(2, 3), Matrix(2, 3)), ShapeError);
    CHECK_THROWS_AS(matmul_nt(Matrix(2, 3), Matrix(2, 4)), ShapeError);
    CHECK_THROWS_AS(matmul_tn(Matrix(2, 3), Matrix(3, 3)), ShapeError);
    CHECK_THROWS_AS(add(Matrix(2, 3), Matrix(3, 2)), ShapeError);
  }

  TEST_CASE("softmax rows are distributions and ignore -inf entries") {
    SeededRng rng(2);
    Matrix m = random_normal(5, 7, rng, 10.0);
    m(2, 3) = -std::numeric_limits<double>::infinity();
    Matrix p = softmax_rows(m);
    for (std::size_t r = 0; r < p.rows(); ++r) {
      auto row = p.row(r);
      CHECK(std::accumulate(row.begin(), row.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(p(2, 3) == 0.0);

    Matrix shifted = m;
    for (auto& v : shifted.data()) v += 1000.0;
    CHECK(max_abs_diff(softmax_rows(shifted), p) < 1e-12);
  }

  TEST_CASE("cross entropy loss and gradient") {
    // Two equal logits: loss is ln 2 per row.
    Matrix flat{{0.0, 0.0}, {3.0, 3.0}};
    const std::size_t targets[] = {0, 1};
    auto lg = cross_entropy(flat, targets);
    CHECK(lg.loss == doctest::Approx(std::log(2.0)).epsilon(1e-14));

    SeededRng rng(3);
    Matrix logits = random_normal(4, 6, rng, 2.0);
    const std::size_t gold[] = {5, 0, 2, 2};
    auto out = cross_entropy(logits, gold);
    Matrix numeric = finite_diff_grad([&](const Matrix& z) { return cross_entropy(z, gold).loss; }, logits);
    CHECK(relative_error(out.grad, numeric) < 1e-7);

    const std::size_t bad[] = {0, 1, 2, 6};
    CHECK_THROWS_AS(cross_entropy(logits, bad), IndexError);
    const std::size_t short_targets[] = {0, 1};
    CHECK_THROWS_AS(cross_entropy(logits, short_targets), ShapeError);
  }

  TEST_CASE("relative error uses the larger magnitude") {
    Matrix a{{1.0, 2.0}};
    Matrix b{{1.0, 2.2}};
    CHECK(relative_error(a, b) == doctest::Approx(0.2 / 2.2));
    CHECK(relative_error(Matrix(1, 2), Matrix(1, 2)) == 0.0);
  }

  TEST_CASE("seeded generator is reproducible and in range") {
    SeededRng a(42), b(42), c(43);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
      const auto x = a.next_u64();
      CHECK(x == b.next_u64());
      differs = differs || x != c.next_u64();
    }
    CHECK(differs);

    SeededRng rng(7);
    std::vector<std::size_t> hist(10, 0);
    double sum = 0.0, sum2 = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
      const double u = rng.uniform();
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
      const auto k = rng.below(10);
      REQUIRE(k < 10);
      ++hist[k];
      const double g = rng.gaussian(1.0, 2.0);
      sum += g;
      sum2 += g * g;
    }
    for (auto h : hist) CHECK(std::abs(static_cast<double>(h) - n / 10.0) < 5 * std::sqrt(n / 10.0));
    const double mean = sum / n;
    CHECK(std::abs(mean - 1.0) < 0.05);
    CHECK(std::abs(sum2 / n - mean * mean - 4.0) < 0.2);
  }

  TEST_CASE("shuffle permutes") {
    SeededRng rng(9);
    std::vector<int> v(50);
    std::iota(v.begin(), v.end(), 0);
    auto w = v;
    rng.shuffle(w);
    CHECK(w != v);
    std::sort(w.begin(), w.end());
    CHECK(w == v);
  }
}
