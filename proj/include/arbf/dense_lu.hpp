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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace arbf {

/// Row-major square matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  double& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  double operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * n_, n_}; }
  std::span<const double> data() const { return data_; }

  double max_abs() const;
  std::vector<double> multiply(std::span<const double> v) const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// PA = LU with partial (row) pivoting, packed in place.
class LuDecomposition {
 public:
  /// Factorizes `a`. Throws SingularMatrixError when a pivot magnitude drops
  /// below `relative_pivot_tolerance * max|a|`.
  explicit LuDecomposition(DenseMatrix a, double relative_pivot_tolerance = 1e-12);

  std::vector<double> solve(std::span<const double> rhs) const;

  double max_pivot() const { return max_pivot_; }
  double min_pivot() const { return min_pivot_; }
  /// max|pivot| / min|pivot|: a cheap lower bound on the condition number.
  double pivot_ratio() const { return max_pivot_ / min_pivot_; }

 private:
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
  double max_pivot_ = 0.0;
  double min_pivot_ = 0.0;
};

/// max_i |(A w - b)_i|
double residual_inf_norm(const DenseMatrix& a, std::span<const double> w, std::span<const double> b);

}  // namespace arbf
