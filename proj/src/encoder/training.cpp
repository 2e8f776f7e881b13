// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "forward.hpp"
#include "loraseq/error.hpp"
#include "loraseq/numerics.hpp"

namespace loraseq::encoder {

namespace {

void check_example(const Model& model, const Example& ex, Task task, std::size_t index) {
  const std::size_t n = ex.token_ids.size();
  const std::string where = "example " + std::to_string(index);
  if (n == 0) throw DataError(where + " is empty");
  if (task == Task::tag) {
    if (ex.tags.size() != n) throw DataError(where + " is missing tag annotations");
    for (std::size_t t : ex.tags) {
      if (t >= model.config.n_tags) {
        throw IndexError(where + ": tag id " + std::to_string(t) + " out of range");
      }
    }
  } else {
    if (ex.heads.size() != n || ex.deprels.size() != n) {
      throw DataError(where + " is missing head/deprel annotations");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (ex.heads[i] > n || ex.heads[i] == i + 1) {
        throw DataError(where + ": invalid head " + std::to_string(ex.heads[i]) + " for token " +
                        std::to_string(i + 1));
      }
      if (ex.deprels[i] >= model.config.n_deprels) {
        throw IndexError(where + ": deprel id " + std::to_string(ex.deprels[i]) + " out of range");
      }
    }
  }
}

}  // namespace

double batch_loss(const Model& model, std::span<const Example> batch, Task task,
                  Gradients* grads) {
  if (batch.empty()) throw DataError("empty training batch");
  std::size_t total_tokens = 0;
  for (std::size_t b = 0; b < batch.size(); ++b) {
    check_example(model, batch[b], task, b);
    total_tokens += batch[b].token_ids.size();
  }
  if (grads != nullptr) {
    grads->clear();
    for (const auto& p : model.parameters())
      if (p.trainable) grads->emplace(p.name, Matrix(p.value->rows(), p.value->cols()));
  }

  double loss = 0.0;
  for (const Example& ex : batch) {
    const double weight =
        static_cast<double>(ex.token_ids.size()) / static_cast<double>(total_tokens);
    detail::EncodeCache cache;
    Matrix hidden = detail::run_encoder(model, ex.token_ids, grads != nullptr ? &cache : nullptr);

    if (task == Task::tag) {
      Matrix logits = detail::tag_head_forward(model, hidden);
      LossAndGrad ce = cross_entropy(logits, ex.tags);
      loss += weight * ce.loss;
      if (grads != nullptr) {
        Matrix d_logits = scaled(ce.grad, weight);
        Matrix d_hidden = detail::tag_head_backward(model, hidden, d_logits, grads);
        detail::encoder_backward(model, cache, d_hidden, grads);
      }
    } else {
      detail::ArcCache arc = detail::arc_forward(model, hidden);
      LossAndGrad head_ce = cross_entropy(arc.scores, ex.heads);
      Matrix features = detail::label_features(hidden, arc.candidates, ex.heads);
      LossAndGrad label_ce = cross_entropy(detail::label_head_forward(model, features), ex.deprels);
      loss += weight * (head_ce.loss + label_ce.loss);
      if (grads != nullptr) {
        Matrix d_hidden = detail::arc_backward(model, hidden, arc, scaled(head_ce.grad, weight),
                                               ex.heads, features, scaled(label_ce.grad, weight),
                                               grads);
        detail::encoder_backward(model, cache, d_hidden, grads);
      }
    }
  }
  return loss;
}

OptimizerState OptimizerState::for_model(const Model& model, AdamSettings settings) {
  OptimizerState s;
  s.settings = settings;
  for (const auto& p : model.parameters()) {
    if (!p.trainable) continue;
    s.moments.emplace(p.name, Moments{Matrix(p.value->rows(), p.value->cols()),
                                      Matrix(p.value->rows(), p.value->cols())});
  }
  return s;
}

double train_step(Model& model, std::span<const Example> batch, Task task, OptimizerState& opt) {
  Gradients grads;
  const double loss = batch_loss(model, batch, task, &grads);

  ++opt.step;
  const AdamSettings& s = opt.settings;
  const double t = static_cast<double>(opt.step);
  const double correction1 = 1.0 - std::pow(s.beta1, t);
  const double correction2 = 1.0 - std::pow(s.beta2, t);
  for (auto& p : model.parameters()) {
    if (!p.trainable) continue;
    auto mit = opt.moments.find(p.name);
    if (mit == opt.moments.end()) {
      throw ConfigError("optimizer has no state for trainable parameter " + p.name);
    }
    const Matrix& g = grads.at(p.name);
    auto value = p.value->data();
    auto m = mit->second.first.data();
    auto v = mit->second.second.data();
    auto gd = g.data();
    for (std::size_t i = 0; i < value.size(); ++i) {
      m[i] = s.beta1 * m[i] + (1.0 - s.beta1) * gd[i];
      v[i] = s.beta2 * v[i] + (1.0 - s.beta2) * gd[i] * gd[i];
      const double m_hat = m[i] / correction1;
      const double v_hat = v[i] / correction2;
      value[i] -= s.learning_rate * m_hat / (std::sqrt(v_hat) + s.epsilon);
    }
  }
  return loss;
}

}  // namespace loraseq::encoder
