// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "loraseq/encoder.hpp"
#include "loraseq/error.hpp"
#include "loraseq/numerics.hpp"

namespace loraseq::encoder {

namespace {

LayerNorm make_norm(std::size_t d) { return {Matrix(1, d, 1.0), Matrix(1, d, 0.0)}; }

lora::AdaptedLinear make_linear(std::size_t d_out, std::size_t d_in, SeededRng& rng,
                                double gain = 1.0) {
  return {random_normal(d_out, d_in, rng, gain / std::sqrt(static_cast<double>(d_in))),
          std::nullopt};
}

template <typename Ref, typename M>
void collect(std::vector<Ref>& out, M& model) {
  out.push_back({"embed.token", &model.token_embedding, false});
  out.push_back({"embed.position", &model.position_embedding, false});
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    auto& layer = model.layers[l];
    const std::string p = "layers." + std::to_string(l) + ".";
    out.push_back({p + "attn_norm.gain", &layer.attn_norm.gain, false});
    out.push_back({p + "attn_norm.bias", &layer.attn_norm.bias, false});
    auto linear = [&](const std::string& name, auto& lin) {
      out.push_back({p + name + ".weight", &lin.weight, false});
      if (lin.adapter) {
        out.push_back({p + name + ".lora_a", &lin.adapter->a, true});
        out.push_back({p + name + ".lora_b", &lin.adapter->b, true});
      }
    };
    linear("query", layer.query);
    linear("key", layer.key);
    linear("value", layer.value);
    linear("output", layer.output);
    out.push_back({p + "ffn_norm.gain", &layer.ffn_norm.gain, false});
    out.push_back({p + "ffn_norm.bias", &layer.ffn_norm.bias, false});
    out.push_back({p + "ff_in", &layer.ff_in, false});
    out.push_back({p + "ff_in_bias", &layer.ff_in_bias, false});
    out.push_back({p + "ff_out", &layer.ff_out, false});
    out.push_back({p + "ff_out_bias", &layer.ff_out_bias, false});
  }
  out.push_back({"final_norm.gain", &model.final_norm.gain, false});
  out.push_back({"final_norm.bias", &model.final_norm.bias, false});
  out.push_back({"tag.weight", &model.tag_head.weight, true});
  out.push_back({"tag.bias", &model.tag_head.bias, true});
  out.push_back({"arc.head_map", &model.arc_head.head_map, true});
  out.push_back({"arc.dep_map", &model.arc_head.dep_map, true});
  out.push_back({"arc.root", &model.arc_head.root, true});
  out.push_back({"arc.label_weight", &model.arc_head.label_weight, true});
  out.push_back({"arc.label_bias", &model.arc_head.label_bias, true});
}

}  // namespace

void ModelConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError("model config: " + msg); };
  if (vocab_size < 1) fail("vocab_size must be positive");
  if (d_model < 2) fail("d_model must be at least 2");
  if (n_heads < 1) fail("n_heads must be positive");
  if (d_model % n_heads != 0) {
    fail("d_model " + std::to_string(d_model) + " is not divisible by n_heads " +
         std::to_string(n_heads));
  }
  if (n_layers < 1) fail("n_layers must be positive");
  if (max_len < 1) fail("max_len must be positive");
  if (d_ff < 1) fail("d_ff must be positive");
  if (d_arc < 1) fail("d_arc must be positive");
  if (rank < 1 || rank >= d_model) {
    fail("rank " + std::to_string(rank) + " must satisfy 1 <= R < d_model");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) fail("alpha must be positive");
  if (n_tags < 1) fail("n_tags must be positive");
  if (n_deprels < 1) fail("n_deprels must be positive");
}

nlohmann::ordered_json ModelConfig::to_json() const {
  nlohmann::ordered_json j;
  j["vocab_size"] = vocab_size;
  j["d_model"] = d_model;
  j["n_heads"] = n_heads;
  j["n_layers"] = n_layers;
  j["max_len"] = max_len;
  j["d_ff"] = d_ff;
  j["d_arc"] = d_arc;
  j["rank"] = rank;
  j["alpha"] = alpha;
  nlohmann::ordered_json adapted = nlohmann::ordered_json::array();
  if (adapt_query) adapted.push_back("query");
  if (adapt_value) adapted.push_back("value");
  j["adapted_projections"] = adapted;
  j["n_tags"] = n_tags;
  j["n_deprels"] = n_deprels;
  return j;
}

ModelConfig ModelConfig::from_json(const nlohmann::json& j) {
  try {
    ModelConfig c;
    c.vocab_size = j.at("vocab_size").get<std::size_t>();
    c.d_model = j.at("d_model").get<std::size_t>();
    c.n_heads = j.at("n_heads").get<std::size_t>();
    c.n_layers = j.at("n_layers").get<std::size_t>();
    c.max_len = j.at("max_len").get<std::size_t>();
    c.d_ff = j.at("d_ff").get<std::size_t>();
    c.d_arc = j.at("d_arc").get<std::size_t>();
    c.rank = j.at("rank").get<std::size_t>();
    c.alpha = j.at("alpha").get<double>();
    c.adapt_query = false;
    c.adapt_value = false;
    for (const auto& p : j.at("adapted_projections")) {
      const auto name = p.get<std::string>();
      if (name == "query") {
        c.adapt_query = true;
      } else if (name == "value") {
        c.adapt_value = true;
      } else {
        throw ConfigError("unknown adapted projection '" + name + "'");
      }
    }
    c.n_tags = j.at("n_tags").get<std::size_t>();
    c.n_deprels = j.at("n_deprels").get<std::size_t>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("model config: ") + e.what());
  }
}

std::vector<ParamRef> Model::parameters() {
  std::vector<ParamRef> out;
  collect(out, *this);
  return out;
}

std::vector<ConstParamRef> Model::parameters() const {
  std::vector<ConstParamRef> out;
  collect(out, *this);
  return out;
}

std::size_t Model::trainable_count() const {
  std::size_t n = 0;
  for (const auto& p : parameters())
    if (p.trainable) n += p.value->size();
  return n;
}

Model Model::stripped() const {
  Model m = *this;
  for (auto& layer : m.layers) {
    layer.query.adapter.reset();
    layer.value.adapter.reset();
  }
  return m;
}

Model Model::merged() const {
  Model m = *this;
  for (auto& layer : m.layers) {
    for (auto* lin : {&layer.query, &layer.value}) {
      lin->weight = lora::lora_merge(*lin);
      lin->adapter.reset();
    }
  }
  return m;
}

Model build_model(const ModelConfig& config, SeededRng& rng) {
  config.validate();
  const std::size_t d = config.d_model;
  Model m;
  m.config = config;
  m.token_embedding = random_normal(config.vocab_size, d, rng, 1.0);
  m.position_embedding = random_normal(config.max_len, d, rng, 0.5);
  m.layers.reserve(config.n_layers);
  // Residual branches start damped so the stream stays dominated by the embeddings.
  const double residual_gain = 0.25;
  for (std::size_t l = 0; l < config.n_layers; ++l) {
    EncoderLayer layer;
    layer.attn_norm = make_norm(d);
    layer.query = make_linear(d, d, rng);
    layer.key = make_linear(d, d, rng);
    layer.value = make_linear(d, d, rng);
    layer.output = make_linear(d, d, rng, residual_gain);
    layer.ffn_norm = make_norm(d);
    layer.ff_in = random_normal(config.d_ff, d, rng, 1.0 / std::sqrt(static_cast<double>(d)));
    layer.ff_in_bias = Matrix(1, config.d_ff);
    layer.ff_out =
        random_normal(d, config.d_ff, rng, residual_gain / std::sqrt(static_cast<double>(config.d_ff)));
    layer.ff_out_bias = Matrix(1, d);
    if (config.adapt_query) layer.query.adapter = lora::lora_init(d, d, config.rank, config.alpha, rng);
    if (config.adapt_value) layer.value.adapter = lora::lora_init(d, d, config.rank, config.alpha, rng);
    m.layers.push_back(std::move(layer));
  }
  m.final_norm = make_norm(d);

  const double head_std = 1.0 / std::sqrt(static_cast<double>(d));
  m.tag_head.weight = random_normal(config.n_tags, d, rng, head_std);
  m.tag_head.bias = Matrix(1, config.n_tags);
  // Small arc maps keep the initial bilinear scores near zero.
  m.arc_head.head_map = random_normal(config.d_arc, d, rng, 0.3 * head_std);
  m.arc_head.dep_map = random_normal(config.d_arc, d, rng, 0.3 * head_std);
  m.arc_head.root = random_normal(1, d, rng, 1.0);
  m.arc_head.label_weight =
      random_normal(config.n_deprels, 2 * d, rng, 1.0 / std::sqrt(2.0 * static_cast<double>(d)));
  m.arc_head.label_bias = Matrix(1, config.n_deprels);
  return m;
}

}  // namespace loraseq::encoder
