// SPDX-License-Identifier: Apache-2.0
#include <limits>

#include "forward.hpp"
#include "loraseq/error.hpp"

namespace loraseq::encoder {

namespace {

std::size_t argmax_lowest(std::span<const double> row) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < row.size(); ++j)
    if (row[j] > row[best]) best = j;
  return best;
}

void check_heads(std::span<const std::size_t> heads, std::size_t n) {
  if (heads.size() != n) {
    throw ShapeError(std::to_string(heads.size()) + " heads for a sentence of " +
                     std::to_string(n) + " tokens");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (heads[i] > n || heads[i] == i + 1) {
      throw IndexError("head " + std::to_string(heads[i]) + " of token " + std::to_string(i + 1) +
                       " is invalid");
    }
  }
}

}  // namespace

Matrix encode(const Model& model, std::span<const std::size_t> token_ids) {
  return detail::run_encoder(model, token_ids, nullptr);
}

Matrix tag_logits(const Model& model, std::span<const std::size_t> token_ids) {
  return detail::tag_head_forward(model, encode(model, token_ids));
}

Matrix arc_scores(const Model& model, std::span<const std::size_t> token_ids) {
  return detail::arc_forward(model, encode(model, token_ids)).scores;
}

Matrix label_logits(const Model& model, std::span<const std::size_t> token_ids,
                    std::span<const std::size_t> heads) {
  Matrix hidden = encode(model, token_ids);
  check_heads(heads, hidden.rows());
  Matrix cand = detail::arc_forward(model, hidden).candidates;
  return detail::label_head_forward(model, detail::label_features(hidden, cand, heads));
}

std::vector<std::size_t> predict_tags(const Model& model, std::span<const std::size_t> token_ids) {
  Matrix logits = tag_logits(model, token_ids);
  std::vector<std::size_t> tags(logits.rows());
  for (std::size_t i = 0; i < logits.rows(); ++i) tags[i] = argmax_lowest(logits.row(i));
  return tags;
}

ArcPrediction predict_arcs(const Model& model, std::span<const std::size_t> token_ids,
                           bool ensure_single_root) {
  Matrix hidden = encode(model, token_ids);
  detail::ArcCache arc = detail::arc_forward(model, hidden);
  const std::size_t n = hidden.rows();
  ArcPrediction pred;
  pred.heads.resize(n);
  for (std::size_t i = 0; i < n; ++i) pred.heads[i] = argmax_lowest(arc.scores.row(i));

  if (ensure_single_root) {
    std::size_t best_root = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (pred.heads[i] != 0) continue;
      if (best_root == n || arc.scores(i, 0) > arc.scores(best_root, 0)) best_root = i;
    }
    if (best_root == n) {
      // No token chose ROOT: promote the token with the strongest ROOT score.
      best_root = 0;
      for (std::size_t i = 1; i < n; ++i)
        if (arc.scores(i, 0) > arc.scores(best_root, 0)) best_root = i;
      pred.heads[best_root] = 0;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (i != best_root && pred.heads[i] == 0) pred.heads[i] = best_root + 1;
  }

  Matrix logits = detail::label_head_forward(
      model, detail::label_features(hidden, arc.candidates, pred.heads));
  pred.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) pred.labels[i] = argmax_lowest(logits.row(i));
  return pred;
}

}  // namespace loraseq::encoder
