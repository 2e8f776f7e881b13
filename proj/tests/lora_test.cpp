// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "loraseq/error.hpp"
#include "loraseq/lora.hpp"
#include "loraseq/numerics.hpp"
#include "support.hpp"

using namespace loraseq;
using namespace loraseq::lora;

namespace {

AdaptedLinear random_layer(std::size_t d_in, std::size_t d_out, std::size_t rank, double alpha,
                           SeededRng& rng, bool random_b) {
  AdaptedLinear layer{random_normal(d_out, d_in, rng), lora_init(d_in, d_out, rank, alpha, rng)};
  if (random_b) layer.adapter->b = random_normal(d_out, rank, rng);
  return layer;
}

}  // namespace

TEST_SUITE("lora") {
  TEST_CASE("init shapes and zero update") {
    SeededRng rng(1);
    auto ad = lora_init(10, 6, 3, 6.0, rng);
    CHECK(ad.a.rows() == 3);
    CHECK(ad.a.cols() == 10);
    CHECK(ad.b.rows() == 6);
    CHECK(ad.b.cols() == 3);
    CHECK(max_abs(ad.b) == 0.0);
    CHECK(max_abs(ad.a) > 0.0);
    CHECK(ad.scale() == 2.0);
  }

  TEST_CASE("init is an exact identity on the forward pass") {
    SeededRng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
      auto layer = random_layer(12, 8, 4, 8.0, rng, false);
      Matrix x = random_normal(5, 12, rng);
      CHECK(lora_forward(layer, x) == matmul_nt(x, layer.weight));
      CHECK(lora_merge(layer) == layer.weight);
    }
  }

  TEST_CASE("invalid rank or alpha") {
    SeededRng rng(3);
    CHECK_THROWS_AS(lora_init(8, 8, 0, 1.0, rng), ConfigError);
    CHECK_THROWS_AS(lora_init(8, 8, 8, 1.0, rng), ConfigError);
    CHECK_THROWS_AS(lora_init(8, 4, 4, 1.0, rng), ConfigError);
    CHECK_THROWS_AS(lora_init(8, 8, 2, 0.0, rng), ConfigError);
    CHECK_THROWS_AS(lora_init(8, 8, 2, -1.0, rng), ConfigError);
    auto layer = random_layer(8, 8, 2, 1.0, rng, false);
    CHECK_THROWS_AS(lora_forward(layer, Matrix(3, 7)), ShapeError);
  }

  TEST_CASE("merged weight reproduces the adapted forward pass") {
    SeededRng rng(4);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t d_in = 2 + rng.below(20), d_out = 2 + rng.below(20);
      const std::size_t rank = 1 + rng.below(std::min(d_in, d_out) - 1);
      auto layer = random_layer(d_in, d_out, rank, rng.uniform(0.5, 16.0), rng, true);
      Matrix x = random_normal(1 + rng.below(6), d_in, rng);
      CHECK(max_abs_diff(lora_forward(layer, x), matmul_nt(x, lora_merge(layer))) < 1e-9);
    }
  }

  TEST_CASE("update equals scaled B times A") {
    SeededRng rng(5);
    auto layer = random_layer(7, 5, 2, 3.0, rng, true);
    Matrix delta = subtract(lora_merge(layer), layer.weight);
    Matrix expect = scaled(loraseq::testing::naive_matmul(layer.adapter->b, layer.adapter->a), 1.5);
    CHECK(max_abs_diff(delta, expect) < 1e-12);
  }

  TEST_CASE("analytic gradients match central differences") {
    SeededRng rng(6);
    for (int trial = 0; trial < 10; ++trial) {
      auto layer = random_layer(9, 7, 3, 6.0, rng, true);
      Matrix x = random_normal(4, 9, rng);
      Matrix up = random_normal(4, 7, rng);
      // Scalar objective <up, forward(x)>, whose gradient w.r.t. the output is `up`.
      auto objective = [&](const AdaptedLinear& l, const Matrix& input) {
        Matrix y = lora_forward(l, input);
        double s = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) s += y.data()[i] * up.data()[i];
        return s;
      };
      auto grads = lora_grads(layer, x, up);
      Matrix num_a = finite_diff_grad(
          [&](const Matrix& a) {
            auto l = layer;
            l.adapter->a = a;
            return objective(l, x);
          },
          layer.adapter->a);
      Matrix num_b = finite_diff_grad(
          [&](const Matrix& b) {
            auto l = layer;
            l.adapter->b = b;
            return objective(l, x);
          },
          layer.adapter->b);
      CHECK(relative_error(grads.grad_a, num_a) < 1e-5);
      CHECK(relative_error(grads.grad_b, num_b) < 1e-5);

      auto cache = lora_forward_cached(layer, x);
      AdapterGrads acc{Matrix(3, 9), Matrix(7, 3)};
      Matrix dx = lora_backward(layer, x, cache.low_rank_input, up, &acc);
      Matrix num_x = finite_diff_grad([&](const Matrix& in) { return objective(layer, in); }, x);
      CHECK(relative_error(dx, num_x) < 1e-5);
      CHECK(max_abs_diff(acc.grad_a, grads.grad_a) < 1e-12);
      CHECK(max_abs_diff(acc.grad_b, grads.grad_b) < 1e-12);
    }
  }

  TEST_CASE("zero-initialised B gives zero A gradient") {
    SeededRng rng(7);
    auto layer = random_layer(6, 6, 2, 2.0, rng, false);
    auto grads = lora_grads(layer, random_normal(3, 6, rng), random_normal(3, 6, rng));
    CHECK(max_abs(grads.grad_a) == 0.0);
    CHECK(max_abs(grads.grad_b) > 0.0);
  }

  TEST_CASE("trainable parameter count") {
    SeededRng rng(8);
    CHECK(trainable_param_count(lora_init(64, 64, 4, 8.0, rng)) == 512);
    CHECK(trainable_param_count(lora_init(100, 30, 5, 8.0, rng)) == 5 * 130);
  }

  TEST_CASE("adapter JSON round trip is bit exact") {
    SeededRng rng(9);
    auto layer = random_layer(11, 5, 2, 4.0, rng, true);
    const auto& ad = *layer.adapter;
    auto back = adapter_from_json(adapter_to_json(ad));
    CHECK(back.rank == ad.rank);
    CHECK(back.alpha == ad.alpha);
    CHECK(back.a.bitwise_equal(ad.a));
    CHECK(back.b.bitwise_equal(ad.b));

    loraseq::testing::TempDir dir;
    save_adapter(ad, dir / "a.json");
    CHECK(load_adapter(dir / "a.json").b.bitwise_equal(ad.b));
    CHECK_THROWS_AS(adapter_from_json("{not json"), DataError);
    CHECK_THROWS_AS(adapter_from_json(R"({"format":"other"})"), DataError);
    CHECK_THROWS_AS(load_adapter(dir / "missing.json"), IoError);
  }
}
