// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "loraseq/lora.hpp"
#include "loraseq/matrix.hpp"
#include "loraseq/rng.hpp"

namespace loraseq::encoder {

struct ModelConfig {
  std::size_t vocab_size = 0;
  std::size_t d_model = 64;
  std::size_t n_heads = 4;
  std::size_t n_layers = 2;
  std::size_t max_len = 64;
  std::size_t d_ff = 128;
  std::size_t d_arc = 32;
  std::size_t rank = 4;
  double alpha = 8.0;
  bool adapt_query = true;
  bool adapt_value = true;
  std::size_t n_tags = 1;
  std::size_t n_deprels = 1;

  /// Throws ConfigError naming the first violated constraint.
  void validate() const;

  nlohmann::ordered_json to_json() const;
  static ModelConfig from_json(const nlohmann::json& j);

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

struct LayerNorm {
  Matrix gain;  // 1 x d
  Matrix bias;  // 1 x d
};

/// Pre-norm transformer block. Q and V carry LoRA adapters when configured;
/// K and O never do.
struct EncoderLayer {
  LayerNorm attn_norm;
  lora::AdaptedLinear query;
  lora::AdaptedLinear key;
  lora::AdaptedLinear value;
  lora::AdaptedLinear output;
  LayerNorm ffn_norm;
  Matrix ff_in;        // d_ff x d
  Matrix ff_in_bias;   // 1 x d_ff
  Matrix ff_out;       // d x d_ff
  Matrix ff_out_bias;  // 1 x d
};

struct TagHead {
  Matrix weight;  // n_tags x d
  Matrix bias;    // 1 x n_tags
};

/// Bilinear arc scorer plus a dependency-label classifier over
/// (dependent, head) state pairs. `root` stands in for the hidden state of the
/// artificial ROOT token.
struct ArcHead {
  Matrix head_map;      // d_arc x d
  Matrix dep_map;       // d_arc x d
  Matrix root;          // 1 x d
  Matrix label_weight;  // n_deprels x 2d
  Matrix label_bias;    // 1 x n_deprels
};

struct ParamRef {
  std::string name;
  Matrix* value;
  bool trainable;
};

struct ConstParamRef {
  std::string name;
  const Matrix* value;
  bool trainable;
};

struct Model {
  ModelConfig config;
  Matrix token_embedding;     // vocab x d
  Matrix position_embedding;  // max_len x d
  std::vector<EncoderLayer> layers;
  LayerNorm final_norm;
  TagHead tag_head;
  ArcHead arc_head;

  /// Every matrix in a fixed order. Trainable entries are exactly the LoRA
  /// A/B matrices and the head weights.
  std::vector<ParamRef> parameters();
  std::vector<ConstParamRef> parameters() const;

  std::size_t trainable_count() const;

  /// Copy with every adapter removed.
  Model stripped() const;
  /// Copy with adapters folded into their base weights and then removed.
  Model merged() const;
};

/// Base weights are drawn from `rng` and treated as the frozen pre-trained
/// model; adapters start at B = 0.
Model build_model(const ModelConfig& config, SeededRng& rng);

/// Hidden states (len x d_model). Throws IndexError for ids >= vocab_size or
/// sequences longer than max_len, DataError for an empty sequence.
Matrix encode(const Model& model, std::span<const std::size_t> token_ids);

Matrix tag_logits(const Model& model, std::span<const std::size_t> token_ids);

/// len x (len + 1). Column 0 is ROOT, column j >= 1 is token j - 1. The
/// self-attachment entry of each row is -inf.
Matrix arc_scores(const Model& model, std::span<const std::size_t> token_ids);

/// Label logits (len x n_deprels) for each token attached to `heads[i]`
/// (0 = ROOT, otherwise 1-based token index).
Matrix label_logits(const Model& model, std::span<const std::size_t> token_ids,
                    std::span<const std::size_t> heads);

std::vector<std::size_t> predict_tags(const Model& model, std::span<const std::size_t> token_ids);

struct ArcPrediction {
  std::vector<std::size_t> heads;   // 0 = ROOT, 1-based otherwise
  std::vector<std::size_t> labels;  // deprel indices
};

/// Greedy per-token argmax, lowest column on ties. With `ensure_single_root`
/// only the best-scoring ROOT attachment is kept and the other would-be roots
/// are re-attached to it.
ArcPrediction predict_arcs(const Model& model, std::span<const std::size_t> token_ids,
                           bool ensure_single_root = false);

enum class Task { tag, arc };

/// One sentence in model space. `tags` is required for Task::tag; `heads` and
/// `deprels` for Task::arc.
struct Example {
  std::vector<std::size_t> token_ids;
  std::vector<std::size_t> tags;
  std::vector<std::size_t> heads;
  std::vector<std::size_t> deprels;
};

/// Gradients keyed by trainable parameter name.
using Gradients = std::map<std::string, Matrix>;

/// Mean loss over the batch (token-weighted). For Task::arc this is the head
/// cross-entropy plus the label cross-entropy. Fills `grads` when non-null.
double batch_loss(const Model& model, std::span<const Example> batch, Task task,
                  Gradients* grads = nullptr);

struct AdamSettings {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct Moments {
  Matrix first;
  Matrix second;
};

struct OptimizerState {
  AdamSettings settings;
  std::size_t step = 0;
  std::map<std::string, Moments> moments;  // trainable parameters only

  static OptimizerState for_model(const Model& model, AdamSettings settings = {});
};

/// One Adam update of the trainable parameters. Returns the pre-update loss.
double train_step(Model& model, std::span<const Example> batch, Task task, OptimizerState& opt);

/// Binary checkpoint: magic, format version, a JSON header holding the config
/// and caller metadata, then every parameter as (name, rows, cols, raw
/// little-endian doubles). Adapter presence is recorded per projection.
void save_checkpoint(const Model& model, const nlohmann::json& metadata,
                     const std::filesystem::path& path);

struct Checkpoint {
  Model model;
  nlohmann::json metadata;
};
Checkpoint load_checkpoint(const std::filesystem::path& path);

std::string serialize_checkpoint(const Model& model, const nlohmann::json& metadata);
Checkpoint deserialize_checkpoint(const std::string& bytes);

}  // namespace loraseq::encoder
