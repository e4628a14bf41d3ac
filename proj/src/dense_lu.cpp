// Copyright 2026 The arbf-scaffold Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "arbf/dense_lu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "arbf/errors.hpp"

namespace arbf {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> DenseMatrix::multiply(std::span<const double> v) const {
  std::vector<double> out(n_, 0.0);
  for (std::size_t r = 0; r < n_; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < n_; ++c) sum += (*this)(r, c) * v[c];
    out[r] = sum;
  }
  return out;
}

LuDecomposition::LuDecomposition(DenseMatrix a, double relative_pivot_tolerance)
    : lu_(std::move(a)), perm_(lu_.size()) {
  const std::size_t n = lu_.size();
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  if (n == 0) return;

  const double scale = lu_.max_abs();
  const double tiny = relative_pivot_tolerance * scale;
  max_pivot_ = 0.0;
  min_pivot_ = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot_row = k;
    double pivot_mag = std::abs(lu_(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      if (const double m = std::abs(lu_(r, k)); m > pivot_mag) {
        pivot_mag = m;
        pivot_row = r;
      }
    }
    if (!(pivot_mag > tiny) || !std::isfinite(pivot_mag)) {
      throw SingularMatrixError("pivot " + std::to_string(k) + " has magnitude " + std::to_string(pivot_mag) +
                                " (threshold " + std::to_string(tiny) + ")");
    }
    max_pivot_ = std::max(max_pivot_, pivot_mag);
    min_pivot_ = std::min(min_pivot_, pivot_mag);

    if (pivot_row != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu_(k, c), lu_(pivot_row, c));
      std::swap(perm_[k], perm_[pivot_row]);
    }
    const double inv = 1.0 / lu_(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      const double factor = lu_(r, k) * inv;
      lu_(r, k) = factor;
      if (factor == 0.0) continue;
      for (std::size_t c = k + 1; c < n; ++c) lu_(r, c) -= factor * lu_(k, c);
    }
  }
}

std::vector<double> LuDecomposition::solve(std::span<const double> rhs) const {
  const std::size_t n = lu_.size();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm_[i]];
  // Forward substitution, unit lower triangle.
  for (std::size_t i = 0; i < n; ++i) {
    double sum = x[i];
    for (std::size_t j = 0; j < i; ++j) sum -= lu_(i, j) * x[j];
    x[i] = sum;
  }
  for (std::size_t i = n; i-- > 0;) {
    double sum = x[i];
    for (std::size_t j = i + 1; j < n; ++j) sum -= lu_(i, j) * x[j];
    x[i] = sum / lu_(i, i);
  }
  return x;
}

double residual_inf_norm(const DenseMatrix& a, std::span<const double> w, std::span<const double> b) {
  const auto aw = a.multiply(w);
  double worst = 0.0;
  for (std::size_t i = 0; i < aw.size(); ++i) worst = std::max(worst, std::abs(aw[i] - b[i]));
  return worst;
}

}  // namespace arbf
