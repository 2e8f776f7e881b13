// SPDX-License-Identifier: Apache-2.0
#include "loraseq/lora.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "loraseq/error.hpp"
#include "loraseq/numerics.hpp"

namespace loraseq::lora {

namespace {

constexpr const char* kAdapterFormat = "loraseq-adapter-v1";

void require_input_cols(const AdaptedLinear& layer, const Matrix& x) {
  if (x.cols() != layer.d_in()) {
    throw ShapeError("lora_forward: input " + x.shape_string() + " does not match weight " +
                     layer.weight.shape_string());
  }
}

}  // namespace

void LoraAdapter::validate() const {
  if (rank < 1 || rank >= std::min(d_in, d_out)) {
    throw ConfigError("LoRA rank " + std::to_string(rank) + " must satisfy 1 <= R < min(" +
                      std::to_string(d_in) + ", " + std::to_string(d_out) + ")");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("LoRA alpha must be positive");
  if (a.rows() != rank || a.cols() != d_in) {
    throw ShapeError("LoRA A is " + a.shape_string() + ", expected " + std::to_string(rank) + "x" +
                     std::to_string(d_in));
  }
  if (b.rows() != d_out || b.cols() != rank) {
    throw ShapeError("LoRA B is " + b.shape_string() + ", expected " + std::to_string(d_out) +
                     "x" + std::to_string(rank));
  }
}

LoraAdapter lora_init(std::size_t d_in, std::size_t d_out, std::size_t rank, double alpha,
                      SeededRng& rng) {
  LoraAdapter ad;
  ad.rank = rank;
  ad.d_in = d_in;
  ad.d_out = d_out;
  ad.alpha = alpha;
  if (rank < 1 || rank >= std::min(d_in, d_out)) {
    throw ConfigError("LoRA rank " + std::to_string(rank) + " must satisfy 1 <= R < min(" +
                      std::to_string(d_in) + ", " + std::to_string(d_out) + ")");
  }
  if (!(alpha > 0.0)) throw ConfigError("LoRA alpha must be positive");
  ad.a = random_normal(rank, d_in, rng, 1.0 / std::sqrt(static_cast<double>(rank)));
  ad.b = Matrix(d_out, rank);
  return ad;
}

ForwardCache lora_forward_cached(const AdaptedLinear& layer, const Matrix& x) {
  require_input_cols(layer, x);
  ForwardCache cache{matmul_nt(x, layer.weight), Matrix{}};
  if (layer.adapter) {
    const LoraAdapter& ad = *layer.adapter;
    ad.validate();
    if (ad.d_in != layer.d_in() || ad.d_out != layer.d_out()) {
      throw ShapeError("adapter " + std::to_string(ad.d_out) + "x" + std::to_string(ad.d_in) +
                       " does not match weight " + layer.weight.shape_string());
    }
    cache.low_rank_input = matmul_nt(x, ad.a);
    add_scaled_inplace(cache.output, matmul_nt(cache.low_rank_input, ad.b), ad.scale());
  }
  return cache;
}

Matrix lora_forward(const AdaptedLinear& layer, const Matrix& x) {
  return lora_forward_cached(layer, x).output;
}

Matrix lora_backward(const AdaptedLinear& layer, const Matrix& x, const Matrix& low_rank_input,
                     const Matrix& upstream, AdapterGrads* grads) {
  if (upstream.rows() != x.rows() || upstream.cols() != layer.d_out()) {
    throw ShapeError("lora backward: upstream " + upstream.shape_string() + " expected " +
                     std::to_string(x.rows()) + "x" + std::to_string(layer.d_out()));
  }
  Matrix dx = matmul(upstream, layer.weight);
  if (!layer.adapter) return dx;
  const LoraAdapter& ad = *layer.adapter;
  const double s = ad.scale();
  // upstream * B, shared by dA and dx.
  Matrix ub = matmul(upstream, ad.b);
  if (grads != nullptr) {
    if (grads->grad_a.empty()) grads->grad_a = Matrix(ad.rank, ad.d_in);
    if (grads->grad_b.empty()) grads->grad_b = Matrix(ad.d_out, ad.rank);
    add_scaled_inplace(grads->grad_a, matmul_tn(ub, x), s);
    add_scaled_inplace(grads->grad_b, matmul_tn(upstream, low_rank_input), s);
  }
  add_scaled_inplace(dx, matmul(ub, ad.a), s);
  return dx;
}

AdapterGrads lora_grads(const AdaptedLinear& layer, const Matrix& x, const Matrix& upstream) {
  if (!layer.adapter) throw ConfigError("lora_grads: layer has no adapter");
  require_input_cols(layer, x);
  AdapterGrads grads;
  lora_backward(layer, x, matmul_nt(x, layer.adapter->a), upstream, &grads);
  return grads;
}

Matrix lora_merge(const AdaptedLinear& layer) {
  Matrix merged = layer.weight;
  if (layer.adapter) {
    add_scaled_inplace(merged, matmul(layer.adapter->b, layer.adapter->a), layer.adapter->scale());
  }
  return merged;
}

std::size_t trainable_param_count(const LoraAdapter& adapter) noexcept {
  return adapter.rank * (adapter.d_in + adapter.d_out);
}

std::string adapter_to_json(const LoraAdapter& adapter) {
  adapter.validate();
  nlohmann::ordered_json j;
  j["format"] = kAdapterFormat;
  j["d_in"] = adapter.d_in;
  j["d_out"] = adapter.d_out;
  j["R"] = adapter.rank;
  j["alpha"] = adapter.alpha;
  j["A"] = std::vector<double>(adapter.a.data().begin(), adapter.a.data().end());
  j["B"] = std::vector<double>(adapter.b.data().begin(), adapter.b.data().end());
  return j.dump() + "\n";
}

LoraAdapter adapter_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("adapter checkpoint is not valid JSON: ") + e.what());
  }
  try {
    if (j.value("format", std::string{}) != kAdapterFormat) {
      throw DataError("adapter checkpoint has unknown format tag");
    }
    LoraAdapter ad;
    ad.d_in = j.at("d_in").get<std::size_t>();
    ad.d_out = j.at("d_out").get<std::size_t>();
    ad.rank = j.at("R").get<std::size_t>();
    ad.alpha = j.at("alpha").get<double>();
    ad.a = Matrix(ad.rank, ad.d_in, j.at("A").get<std::vector<double>>());
    ad.b = Matrix(ad.d_out, ad.rank, j.at("B").get<std::vector<double>>());
    ad.validate();
    return ad;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("adapter checkpoint: ") + e.what());
  }
}

void save_adapter(const LoraAdapter& adapter, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << adapter_to_json(adapter);
  if (!out) throw IoError("write failed: " + path.string());
}

LoraAdapter load_adapter(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return adapter_from_json(ss.str());
}

}  // namespace loraseq::lora
