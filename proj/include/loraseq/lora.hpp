// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include "loraseq/matrix.hpp"
#include "loraseq/rng.hpp"

namespace loraseq::lora {

/// Trainable low-rank pair. The update it contributes to a frozen weight W
/// (d_out x d_in) is (alpha / rank) * B * A, with A: rank x d_in and
/// B: d_out x rank.
struct LoraAdapter {
  std::size_t rank = 0;
  std::size_t d_in = 0;
  std::size_t d_out = 0;
  double alpha = 0.0;
  Matrix a;
  Matrix b;
  bool trainable = true;

  double scale() const noexcept { return alpha / static_cast<double>(rank); }

  /// Throws ShapeError/ConfigError if the shape invariants do not hold.
  void validate() const;
};

/// A frozen weight with an optional adapter. Training code only ever writes
/// to `adapter`; `weight` stays bitwise constant.
struct AdaptedLinear {
  Matrix weight;
  std::optional<LoraAdapter> adapter;

  std::size_t d_in() const noexcept { return weight.cols(); }
  std::size_t d_out() const noexcept { return weight.rows(); }
};

/// A ~ N(0, 1/rank), B = 0. Requires 1 <= rank < min(d_in, d_out) and
/// alpha > 0, else ConfigError.
LoraAdapter lora_init(std::size_t d_in, std::size_t d_out, std::size_t rank, double alpha,
                      SeededRng& rng);

/// y = x W^T + scale * (x A^T) B^T for a batch of row vectors x.
Matrix lora_forward(const AdaptedLinear& layer, const Matrix& x);

/// Forward pass that also returns x A^T, the only intermediate the backward
/// pass needs.
struct ForwardCache {
  Matrix output;
  Matrix low_rank_input;  // x A^T (rows x rank); empty without an adapter
};
ForwardCache lora_forward_cached(const AdaptedLinear& layer, const Matrix& x);

struct AdapterGrads {
  Matrix grad_a;
  Matrix grad_b;
};

/// Gradients of a scalar loss w.r.t. A and B given dL/dy. W receives none.
AdapterGrads lora_grads(const AdaptedLinear& layer, const Matrix& x, const Matrix& upstream);

/// Backward pass through the layer given the cached forward state. Returns
/// dL/dx; when `grads` is non-null and the layer has an adapter, the adapter
/// gradients are accumulated into it.
Matrix lora_backward(const AdaptedLinear& layer, const Matrix& x, const Matrix& low_rank_input,
                     const Matrix& upstream, AdapterGrads* grads);

/// W + scale * B A, leaving the layer untouched.
Matrix lora_merge(const AdaptedLinear& layer);

/// rank * (d_in + d_out).
std::size_t trainable_param_count(const LoraAdapter& adapter) noexcept;

/// JSON checkpoint: {"format", "d_in", "d_out", "R", "alpha", "A", "B"},
/// matrices flattened row-major. Doubles are written in shortest round-trip
/// form so save(load(save(x))) reproduces the bytes.
std::string adapter_to_json(const LoraAdapter& adapter);
LoraAdapter adapter_from_json(const std::string& text);
void save_adapter(const LoraAdapter& adapter, const std::filesystem::path& path);
LoraAdapter load_adapter(const std::filesystem::path& path);

}  // namespace loraseq::lora
