// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <limits>

#include "loraseq/error.hpp"
#include "loraseq/kernels.hpp"
#include "loraseq/numerics.hpp"

namespace loraseq {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(op) + ": shape mismatch " + a.shape_string() + " vs " +
                     b.shape_string());
  }
}

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: cannot multiply " + a.shape_string() + " by " + b.shape_string());
  }
  const auto& k = kernels::active();
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* out = c.row(i).data();
    for (std::size_t p = 0; p < a.cols(); ++p) {
      double s = a(i, p);
      if (s != 0.0) k.axpy(s, b.row(p).data(), out, b.cols());
    }
  }
  return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) {
    throw ShapeError("matmul_nt: cannot multiply " + a.shape_string() + " by transpose of " +
                     b.shape_string());
  }
  const auto& k = kernels::active();
  Matrix c(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ar = a.row(i).data();
    for (std::size_t j = 0; j < b.rows(); ++j) c(i, j) = k.dot(ar, b.row(j).data(), a.cols());
  }
  return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) {
    throw ShapeError("matmul_tn: cannot multiply transpose of " + a.shape_string() + " by " +
                     b.shape_string());
  }
  const auto& k = kernels::active();
  Matrix c(a.cols(), b.cols());
  for (std::size_t p = 0; p < a.rows(); ++p) {
    const double* br = b.row(p).data();
    for (std::size_t i = 0; i < a.cols(); ++i) {
      double s = a(p, i);
      if (s != 0.0) k.axpy(s, br, c.row(i).data(), b.cols());
    }
  }
  return c;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

Matrix add(const Matrix& a, const Matrix& b) {
  Matrix c = a;
  add_scaled_inplace(c, b, 1.0);
  return c;
}

Matrix subtract(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "subtract");
  Matrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < cd.size(); ++i) cd[i] -= bd[i];
  return c;
}

Matrix scaled(const Matrix& m, double s) {
  Matrix c = m;
  kernels::active().scale(s, c.data().data(), c.size());
  return c;
}

void add_scaled_inplace(Matrix& a, const Matrix& b, double s) {
  require_same_shape(a, b, "add");
  if (s == 1.0) {
    auto ad = a.data();
    auto bd = b.data();
    for (std::size_t i = 0; i < ad.size(); ++i) ad[i] += bd[i];
    return;
  }
  kernels::active().axpy(s, b.data().data(), a.data().data(), a.size());
}

Matrix softmax_rows(const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto in = m.row(i);
    auto o = out.row(i);
    double mx = -std::numeric_limits<double>::infinity();
    for (double v : in) mx = std::max(mx, v);
    double sum = 0.0;
    for (std::size_t j = 0; j < in.size(); ++j) {
      o[j] = std::exp(in[j] - mx);
      sum += o[j];
    }
    for (double& v : o) v /= sum;
  }
  return out;
}

LossAndGrad cross_entropy(const Matrix& logits, std::span<const std::size_t> targets) {
  if (targets.size() != logits.rows()) {
    throw ShapeError("cross_entropy: " + std::to_string(targets.size()) + " targets for " +
                     logits.shape_string() + " logits");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] >= logits.cols()) {
      throw IndexError("cross_entropy: target " + std::to_string(targets[i]) + " in row " +
                       std::to_string(i) + " is out of range for " +
                       std::to_string(logits.cols()) + " classes");
    }
  }
  LossAndGrad result{0.0, softmax_rows(logits)};
  if (logits.rows() == 0) return result;
  const double inv_rows = 1.0 / static_cast<double>(logits.rows());
  for (std::size_t i = 0; i < logits.rows(); ++i) {
    // log-sum-exp form keeps confident rows accurate where log(p) would round.
    auto row = logits.row(i);
    double mx = -std::numeric_limits<double>::infinity();
    for (double v : row) mx = std::max(mx, v);
    double sum = 0.0;
    for (double v : row) sum += std::exp(v - mx);
    result.loss += (mx + std::log(sum)) - row[targets[i]];
    result.grad(i, targets[i]) -= 1.0;
  }
  result.loss *= inv_rows;
  kernels::active().scale(inv_rows, result.grad.data().data(), result.grad.size());
  return result;
}

Matrix finite_diff_grad(const ScalarFn& f, const Matrix& x, double eps) {
  if (!(eps > 0.0)) throw ConfigError("finite_diff_grad: eps must be positive");
  Matrix g(x.rows(), x.cols());
  Matrix probe = x;
  auto pd = probe.data();
  auto gd = g.data();
  for (std::size_t i = 0; i < pd.size(); ++i) {
    const double orig = pd[i];
    pd[i] = orig + eps;
    const double up = f(probe);
    pd[i] = orig - eps;
    const double down = f(probe);
    pd[i] = orig;
    gd[i] = (up - down) / (2.0 * eps);
  }
  return g;
}

double max_abs(const Matrix& m) {
  double mx = 0.0;
  for (double v : m.data()) mx = std::max(mx, std::abs(v));
  return mx;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double mx = 0.0;
  auto ad = a.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < ad.size(); ++i) mx = std::max(mx, std::abs(ad[i] - bd[i]));
  return mx;
}

double relative_error(const Matrix& a, const Matrix& b, double floor) {
  double scale = std::max({max_abs(a), max_abs(b), floor});
  return max_abs_diff(a, b) / scale;
}

Matrix random_normal(std::size_t rows, std::size_t cols, SeededRng& rng, double stddev) {
  Matrix m(rows, cols);
  for (double& v : m.data()) v = rng.gaussian(0.0, stddev);
  return m;
}

Matrix random_uniform(std::size_t rows, std::size_t cols, SeededRng& rng, double lo, double hi) {
  Matrix m(rows, cols);
  for (double& v : m.data()) v = rng.uniform(lo, hi);
  return m;
}

bool all_finite(const Matrix& m) {
  return std::all_of(m.data().begin(), m.data().end(), [](double v) { return std::isfinite(v); });
}

}  // namespace loraseq
