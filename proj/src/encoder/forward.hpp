// SPDX-License-Identifier: Apache-2.0
// Internal forward/backward machinery shared by inference and training.
#pragma once

#include <span>
#include <vector>

#include "loraseq/encoder.hpp"

namespace loraseq::encoder::detail {

struct NormCache {
  Matrix normalized;
  std::vector<double> inv_std;
};

struct LayerCache {
  Matrix input;
  NormCache attn_norm;
  Matrix attn_in;
  lora::ForwardCache q, k, v;
  std::vector<Matrix> probs;  // one n x n attention map per head
  Matrix context;
  Matrix mid;
  NormCache ffn_norm;
  Matrix ffn_in;
  Matrix pre_act;
  Matrix act;
};

struct EncodeCache {
  std::vector<LayerCache> layers;
  Matrix final_input;
  NormCache final_norm;
  Matrix hidden;
};

struct ArcCache {
  Matrix candidates;  // (n + 1) x d: ROOT vector then hidden states
  Matrix dep_proj;    // n x d_arc
  Matrix head_proj;   // (n + 1) x d_arc
  Matrix scores;      // n x (n + 1), self entries -inf
};

void check_tokens(const Model& model, std::span<const std::size_t> token_ids);

Matrix run_encoder(const Model& model, std::span<const std::size_t> token_ids, EncodeCache* cache);

/// Propagates dL/dhidden down to the embeddings, accumulating adapter
/// gradients. Frozen weights get no gradient.
void encoder_backward(const Model& model, const EncodeCache& cache, const Matrix& d_hidden,
                      Gradients* grads);

Matrix tag_head_forward(const Model& model, const Matrix& hidden);
Matrix tag_head_backward(const Model& model, const Matrix& hidden, const Matrix& d_logits,
                         Gradients* grads);

ArcCache arc_forward(const Model& model, const Matrix& hidden);
Matrix label_features(const Matrix& hidden, const Matrix& candidates,
                      std::span<const std::size_t> heads);
Matrix label_head_forward(const Model& model, const Matrix& features);

/// Returns dL/dhidden from both the arc scores and the label logits.
Matrix arc_backward(const Model& model, const Matrix& hidden, const ArcCache& c,
                    const Matrix& d_scores, std::span<const std::size_t> heads,
                    const Matrix& features, const Matrix& d_label_logits, Gradients* grads);

}  // namespace loraseq::encoder::detail
