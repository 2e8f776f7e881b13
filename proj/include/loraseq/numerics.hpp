// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>

#include "loraseq/matrix.hpp"
#include "loraseq/rng.hpp"

namespace loraseq {

/// a * b. Throws ShapeError when a.cols() != b.rows().
Matrix matmul(const Matrix& a, const Matrix& b);
/// a * b^T, the layout of x * W^T for a row-major weight W (d_out x d_in).
Matrix matmul_nt(const Matrix& a, const Matrix& b);
/// a^T * b.
Matrix matmul_tn(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& m);

Matrix add(const Matrix& a, const Matrix& b);
Matrix subtract(const Matrix& a, const Matrix& b);
Matrix scaled(const Matrix& m, double s);
/// a += s * b
void add_scaled_inplace(Matrix& a, const Matrix& b, double s = 1.0);

/// Row-wise softmax with per-row max subtraction. Entries equal to -inf are
/// allowed (they receive probability 0) as long as each row has a finite max.
Matrix softmax_rows(const Matrix& m);

struct LossAndGrad {
  double loss;
  Matrix grad;
};

/// Mean over rows of -log softmax(logits)[target]; grad is
/// (softmax - onehot) / rows. Throws IndexError on an out-of-range target and
/// ShapeError when targets.size() != logits.rows().
LossAndGrad cross_entropy(const Matrix& logits, std::span<const std::size_t> targets);

using ScalarFn = std::function<double(const Matrix&)>;

/// Central-difference gradient estimate, one entry at a time.
Matrix finite_diff_grad(const ScalarFn& f, const Matrix& x, double eps = 1e-5);

/// max|a - b| / max(max|a|, max|b|, floor). The comparison metric used by
/// every gradient check in the repo.
double relative_error(const Matrix& a, const Matrix& b, double floor = 1e-12);
double max_abs(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Entries drawn i.i.d. from N(0, stddev^2).
Matrix random_normal(std::size_t rows, std::size_t cols, SeededRng& rng, double stddev = 1.0);
Matrix random_uniform(std::size_t rows, std::size_t cols, SeededRng& rng, double lo, double hi);

bool all_finite(const Matrix& m);

}  // namespace loraseq
