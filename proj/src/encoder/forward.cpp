// SPDX-License-Identifier: Apache-2.0
#include "forward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "loraseq/error.hpp"
#include "loraseq/numerics.hpp"

namespace loraseq::encoder::detail {

namespace {

constexpr double kNormEps = 1e-5;
// sqrt(2 / pi) for the tanh form of GELU.
const double kGeluC = std::sqrt(2.0 / std::numbers::pi);
constexpr double kGeluK = 0.044715;

Matrix column_block(const Matrix& m, std::size_t start, std::size_t width) {
  Matrix out(m.rows(), width);
  for (std::size_t i = 0; i < m.rows(); ++i)
    std::copy_n(m.row(i).begin() + static_cast<std::ptrdiff_t>(start), width, out.row(i).begin());
  return out;
}

void add_column_block(Matrix& m, const Matrix& block, std::size_t start) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto dst = m.row(i);
    auto src = block.row(i);
    for (std::size_t j = 0; j < block.cols(); ++j) dst[start + j] += src[j];
  }
}

void add_row_bias(Matrix& m, const Matrix& bias) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] += bias(0, j);
  }
}

double gelu(double z) {
  return 0.5 * z * (1.0 + std::tanh(kGeluC * (z + kGeluK * z * z * z)));
}

double gelu_grad(double z) {
  const double t = std::tanh(kGeluC * (z + kGeluK * z * z * z));
  return 0.5 * (1.0 + t) + 0.5 * z * (1.0 - t * t) * kGeluC * (1.0 + 3.0 * kGeluK * z * z);
}

Matrix layer_norm(const Matrix& x, const LayerNorm& ln, NormCache* cache) {
  const std::size_t d = x.cols();
  Matrix normalized(x.rows(), d);
  std::vector<double> inv_std(x.rows());
  Matrix y(x.rows(), d);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto r = x.row(i);
    double mean = 0.0;
    for (double v : r) mean += v;
    mean /= static_cast<double>(d);
    double var = 0.0;
    for (double v : r) var += (v - mean) * (v - mean);
    var /= static_cast<double>(d);
    inv_std[i] = 1.0 / std::sqrt(var + kNormEps);
    for (std::size_t j = 0; j < d; ++j) {
      normalized(i, j) = (r[j] - mean) * inv_std[i];
      y(i, j) = ln.gain(0, j) * normalized(i, j) + ln.bias(0, j);
    }
  }
  if (cache != nullptr) {
    cache->normalized = std::move(normalized);
    cache->inv_std = std::move(inv_std);
  }
  return y;
}

Matrix layer_norm_backward(const Matrix& dy, const LayerNorm& ln, const NormCache& c) {
  const std::size_t d = dy.cols();
  const double inv_d = 1.0 / static_cast<double>(d);
  Matrix dx(dy.rows(), d);
  std::vector<double> dxhat(d);
  for (std::size_t i = 0; i < dy.rows(); ++i) {
    double mean_dxhat = 0.0;
    double mean_dxhat_xhat = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      dxhat[j] = dy(i, j) * ln.gain(0, j);
      mean_dxhat += dxhat[j];
      mean_dxhat_xhat += dxhat[j] * c.normalized(i, j);
    }
    mean_dxhat *= inv_d;
    mean_dxhat_xhat *= inv_d;
    for (std::size_t j = 0; j < d; ++j) {
      dx(i, j) = c.inv_std[i] * (dxhat[j] - mean_dxhat - c.normalized(i, j) * mean_dxhat_xhat);
    }
  }
  return dx;
}

void accumulate(Gradients* grads, const std::string& name, const Matrix& g) {
  if (grads == nullptr) return;
  auto it = grads->find(name);
  if (it == grads->end()) {
    grads->emplace(name, g);
  } else {
    add_scaled_inplace(it->second, g, 1.0);
  }
}

void accumulate_adapter(Gradients* grads, const std::string& prefix,
                        const lora::AdapterGrads& g) {
  accumulate(grads, prefix + ".lora_a", g.grad_a);
  accumulate(grads, prefix + ".lora_b", g.grad_b);
}

Matrix column_sums(const Matrix& m) {
  Matrix s(1, m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s(0, j) += m(i, j);
  return s;
}

}  // namespace

void check_tokens(const Model& model, std::span<const std::size_t> token_ids) {
  if (token_ids.empty()) throw DataError("cannot encode an empty sentence");
  if (token_ids.size() > model.config.max_len) {
    throw IndexError("sentence length " + std::to_string(token_ids.size()) + " exceeds max_len " +
                     std::to_string(model.config.max_len));
  }
  for (std::size_t i = 0; i < token_ids.size(); ++i) {
    if (token_ids[i] >= model.config.vocab_size) {
      throw IndexError("token id " + std::to_string(token_ids[i]) + " at position " +
                       std::to_string(i) + " is out of range for vocab size " +
                       std::to_string(model.config.vocab_size));
    }
  }
}

Matrix run_encoder(const Model& model, std::span<const std::size_t> token_ids,
                   EncodeCache* cache) {
  check_tokens(model, token_ids);
  const std::size_t n = token_ids.size();
  const std::size_t d = model.config.d_model;
  const std::size_t heads = model.config.n_heads;
  const std::size_t dh = d / heads;
  const double inv_sqrt_dh = 1.0 / std::sqrt(static_cast<double>(dh));

  Matrix x(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    auto tok = model.token_embedding.row(token_ids[i]);
    auto pos = model.position_embedding.row(i);
    auto out = x.row(i);
    for (std::size_t j = 0; j < d; ++j) out[j] = tok[j] + pos[j];
  }

  if (cache != nullptr) cache->layers.assign(model.layers.size(), LayerCache{});
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const EncoderLayer& layer = model.layers[l];
    LayerCache local;
    LayerCache& c = cache != nullptr ? cache->layers[l] : local;
    c.input = x;

    c.attn_in = layer_norm(x, layer.attn_norm, &c.attn_norm);
    c.q = lora::lora_forward_cached(layer.query, c.attn_in);
    c.k = lora::lora_forward_cached(layer.key, c.attn_in);
    c.v = lora::lora_forward_cached(layer.value, c.attn_in);
    c.context = Matrix(n, d);
    c.probs.resize(heads);
    for (std::size_t h = 0; h < heads; ++h) {
      Matrix qh = column_block(c.q.output, h * dh, dh);
      Matrix kh = column_block(c.k.output, h * dh, dh);
      Matrix vh = column_block(c.v.output, h * dh, dh);
      c.probs[h] = softmax_rows(scaled(matmul_nt(qh, kh), inv_sqrt_dh));
      add_column_block(c.context, matmul(c.probs[h], vh), h * dh);
    }
    c.mid = add(x, lora::lora_forward(layer.output, c.context));

    c.ffn_in = layer_norm(c.mid, layer.ffn_norm, &c.ffn_norm);
    c.pre_act = matmul_nt(c.ffn_in, layer.ff_in);
    add_row_bias(c.pre_act, layer.ff_in_bias);
    c.act = c.pre_act;
    for (double& v : c.act.data()) v = gelu(v);
    Matrix ff = matmul_nt(c.act, layer.ff_out);
    add_row_bias(ff, layer.ff_out_bias);
    x = add(c.mid, ff);
  }

  NormCache final_cache;
  Matrix hidden = layer_norm(x, model.final_norm, &final_cache);
  if (cache != nullptr) {
    cache->final_input = std::move(x);
    cache->final_norm = std::move(final_cache);
    cache->hidden = hidden;
  }
  return hidden;
}

void encoder_backward(const Model& model, const EncodeCache& cache, const Matrix& d_hidden,
                      Gradients* grads) {
  const std::size_t d = model.config.d_model;
  const std::size_t heads = model.config.n_heads;
  const std::size_t dh = d / heads;
  const double inv_sqrt_dh = 1.0 / std::sqrt(static_cast<double>(dh));

  Matrix dx = layer_norm_backward(d_hidden, model.final_norm, cache.final_norm);
  for (std::size_t l = model.layers.size(); l-- > 0;) {
    const EncoderLayer& layer = model.layers[l];
    const LayerCache& c = cache.layers[l];
    const std::string prefix = "layers." + std::to_string(l) + ".";

    // Feed-forward sublayer (all weights frozen; only propagate).
    Matrix d_act = matmul(dx, layer.ff_out);
    for (std::size_t i = 0; i < d_act.size(); ++i) d_act.data()[i] *= gelu_grad(c.pre_act.data()[i]);
    Matrix d_ffn_in = matmul(d_act, layer.ff_in);
    Matrix d_mid = add(dx, layer_norm_backward(d_ffn_in, layer.ffn_norm, c.ffn_norm));

    // Attention sublayer.
    Matrix d_context = matmul(d_mid, layer.output.weight);
    Matrix dq(c.q.output.rows(), d);
    Matrix dk(c.k.output.rows(), d);
    Matrix dv(c.v.output.rows(), d);
    for (std::size_t h = 0; h < heads; ++h) {
      const Matrix& p = c.probs[h];
      Matrix qh = column_block(c.q.output, h * dh, dh);
      Matrix kh = column_block(c.k.output, h * dh, dh);
      Matrix vh = column_block(c.v.output, h * dh, dh);
      Matrix d_oh = column_block(d_context, h * dh, dh);
      Matrix dp = matmul_nt(d_oh, vh);
      add_column_block(dv, matmul_tn(p, d_oh), h * dh);
      Matrix ds(p.rows(), p.cols());
      for (std::size_t i = 0; i < p.rows(); ++i) {
        double dot = 0.0;
        for (std::size_t j = 0; j < p.cols(); ++j) dot += p(i, j) * dp(i, j);
        for (std::size_t j = 0; j < p.cols(); ++j) ds(i, j) = p(i, j) * (dp(i, j) - dot) * inv_sqrt_dh;
      }
      add_column_block(dq, matmul(ds, kh), h * dh);
      add_column_block(dk, matmul_tn(ds, qh), h * dh);
    }

    lora::AdapterGrads gq;
    lora::AdapterGrads gv;
    Matrix d_attn_in = lora::lora_backward(layer.query, c.attn_in, c.q.low_rank_input, dq,
                                           grads != nullptr ? &gq : nullptr);
    add_scaled_inplace(d_attn_in, lora::lora_backward(layer.key, c.attn_in, c.k.low_rank_input, dk,
                                                      nullptr));
    add_scaled_inplace(d_attn_in,
                       lora::lora_backward(layer.value, c.attn_in, c.v.low_rank_input, dv,
                                           grads != nullptr ? &gv : nullptr));
    if (layer.query.adapter) accumulate_adapter(grads, prefix + "query", gq);
    if (layer.value.adapter) accumulate_adapter(grads, prefix + "value", gv);

    dx = add(d_mid, layer_norm_backward(d_attn_in, layer.attn_norm, c.attn_norm));
  }
}

Matrix tag_head_forward(const Model& model, const Matrix& hidden) {
  Matrix logits = matmul_nt(hidden, model.tag_head.weight);
  add_row_bias(logits, model.tag_head.bias);
  return logits;
}

Matrix tag_head_backward(const Model& model, const Matrix& hidden, const Matrix& d_logits,
                         Gradients* grads) {
  accumulate(grads, "tag.weight", matmul_tn(d_logits, hidden));
  accumulate(grads, "tag.bias", column_sums(d_logits));
  return matmul(d_logits, model.tag_head.weight);
}

Matrix head_candidates(const Model& model, const Matrix& hidden) {
  const std::size_t n = hidden.rows();
  const std::size_t d = hidden.cols();
  Matrix cand(n + 1, d);
  std::copy_n(model.arc_head.root.row(0).begin(), d, cand.row(0).begin());
  for (std::size_t i = 0; i < n; ++i) std::copy_n(hidden.row(i).begin(), d, cand.row(i + 1).begin());
  return cand;
}

ArcCache arc_forward(const Model& model, const Matrix& hidden) {
  ArcCache c;
  c.candidates = head_candidates(model, hidden);
  c.dep_proj = matmul_nt(hidden, model.arc_head.dep_map);
  c.head_proj = matmul_nt(c.candidates, model.arc_head.head_map);
  c.scores = matmul_nt(c.dep_proj, c.head_proj);
  for (std::size_t i = 0; i < hidden.rows(); ++i)
    c.scores(i, i + 1) = -std::numeric_limits<double>::infinity();
  return c;
}

Matrix label_features(const Matrix& hidden, const Matrix& candidates,
                      std::span<const std::size_t> heads) {
  const std::size_t d = hidden.cols();
  Matrix f(hidden.rows(), 2 * d);
  for (std::size_t i = 0; i < hidden.rows(); ++i) {
    auto out = f.row(i);
    std::copy_n(hidden.row(i).begin(), d, out.begin());
    std::copy_n(candidates.row(heads[i]).begin(), d, out.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return f;
}

Matrix label_head_forward(const Model& model, const Matrix& features) {
  Matrix logits = matmul_nt(features, model.arc_head.label_weight);
  add_row_bias(logits, model.arc_head.label_bias);
  return logits;
}

Matrix arc_backward(const Model& model, const Matrix& hidden, const ArcCache& c,
                    const Matrix& d_scores, std::span<const std::size_t> heads,
                    const Matrix& features, const Matrix& d_label_logits, Gradients* grads) {
  const std::size_t n = hidden.rows();
  const std::size_t d = hidden.cols();
  const ArcHead& arc = model.arc_head;

  Matrix d_dep = matmul(d_scores, c.head_proj);
  Matrix d_head = matmul_tn(d_scores, c.dep_proj);
  accumulate(grads, "arc.dep_map", matmul_tn(d_dep, hidden));
  accumulate(grads, "arc.head_map", matmul_tn(d_head, c.candidates));
  Matrix d_hidden = matmul(d_dep, arc.dep_map);
  Matrix d_cand = matmul(d_head, arc.head_map);

  accumulate(grads, "arc.label_weight", matmul_tn(d_label_logits, features));
  accumulate(grads, "arc.label_bias", column_sums(d_label_logits));
  Matrix d_features = matmul(d_label_logits, arc.label_weight);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      d_hidden(i, j) += d_features(i, j);
      d_cand(heads[i], j) += d_features(i, d + j);
    }
  }

  Matrix d_root(1, d);
  std::copy_n(d_cand.row(0).begin(), d, d_root.row(0).begin());
  accumulate(grads, "arc.root", d_root);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) d_hidden(i, j) += d_cand(i + 1, j);
  return d_hidden;
}

}  // namespace loraseq::encoder::detail
