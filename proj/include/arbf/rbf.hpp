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

#include <cmath>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arbf/centers.hpp"
#include "arbf/dense_lu.hpp"

namespace arbf {

enum class BasisType { Gaussian, MQ, IMQ, TPS };

struct BasisKind {
  BasisType type = BasisType::IMQ;
  double c = 0.1;  // shape parameter; ignored by TPS
};

std::string_view to_string(BasisType type);
/// Accepts gaussian, mq, imq, tps (case-insensitive). Throws ValidationError.
BasisType parse_basis_type(std::string_view name);

/// Throws ValidationError when c is not a positive finite number for a
/// basis that uses it.
void validate(const BasisKind& basis);

/// Gaussian exp(-(cr)^2), MQ sqrt(r^2+c^2), IMQ 1/sqrt(r^2+c^2), TPS r^2 ln r
/// with TPS(0) = 0.
inline double eval_basis(const BasisKind& basis, double r) {
  switch (basis.type) {
    case BasisType::Gaussian: {
      const double cr = basis.c * r;
      return std::exp(-cr * cr);
    }
    case BasisType::MQ: return std::sqrt(r * r + basis.c * basis.c);
    case BasisType::IMQ: return 1.0 / std::sqrt(r * r + basis.c * basis.c);
    case BasisType::TPS: return r > 0.0 ? r * r * std::log(r) : 0.0;
  }
  return 0.0;
}

struct LinearSystem {
  DenseMatrix matrix;
  std::vector<double> rhs;
};

/// A(j,i) = phi(pairwise_distance(center_j, center_i)) + lambda [i == j],
/// rhs(j) = value of center j. Throws DuplicateCenterError when two points
/// coincide or two segments share both endpoints.
///
/// Anisotropic mode measures with pairwise_distance. Isotropic mode accepts
/// point centers only and uses the Euclidean distance directly; on a
/// point-only set both modes yield the same matrix.
LinearSystem assemble_matrix(std::span<const InterpolationCenter> centers, const BasisKind& basis,
                             double lambda, CenterMode mode);
LinearSystem assemble_matrix(std::span<const InterpolationCenter> centers, const BasisKind& basis,
                             double lambda);

/// Solves through LuDecomposition. Throws SingularMatrixError with a hint to
/// raise the regularization.
std::vector<double> solve_weights(const DenseMatrix& a, std::span<const double> rhs);

struct InterpolationModel {
  std::vector<InterpolationCenter> centers;
  BasisKind basis;
  CenterMode mode = CenterMode::Anisotropic;
  double lambda = 0.0;
  std::vector<double> weights;

  // Solve diagnostics. Not serialized.
  double pivot_ratio = 0.0;
  double residual = 0.0;
};

InterpolationModel fit(std::vector<InterpolationCenter> centers, const BasisKind& basis, CenterMode mode,
                       double lambda = 0.0);

/// sum_i w_i phi(d_i(x)). Pure; safe to call concurrently on a shared model.
double evaluate(const InterpolationModel& model, Point3 x);

/// ASCII model file: "ARBF1", basis line, lambda line, N, N center lines,
/// N weight lines. Reals carry 17 significant digits so doubles round-trip.
void write_model(const InterpolationModel& model, const std::filesystem::path& path);
std::string format_model(const InterpolationModel& model);

/// Throws IoError or ParseError. The mode is Anisotropic iff a segment
/// center is present.
InterpolationModel read_model(const std::filesystem::path& path);
InterpolationModel parse_model(std::string_view text);

}  // namespace arbf
