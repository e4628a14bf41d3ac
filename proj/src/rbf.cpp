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

#include "arbf/rbf.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <string>

#include "arbf/errors.hpp"
#include "text_reader.hpp"

namespace arbf {
namespace {

constexpr double kCoincidenceTolerance = 1e-12;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return out;
}

bool same_site(const InterpolationCenter& ci, const InterpolationCenter& cj) {
  if (ci.is_point() != cj.is_point()) return false;
  if (ci.is_point()) return dist_point_point(ci.point().position, cj.point().position) < kCoincidenceTolerance;
  // The endpoint-minimum segment rule reports 0 for any two segments that
  // merely touch, so identity is judged on both endpoints instead.
  const auto& s = ci.segment();
  const auto& t = cj.segment();
  const auto close = [](Point3 p, Point3 q) { return dist_point_point(p, q) < kCoincidenceTolerance; };
  return (close(s.a, t.a) && close(s.b, t.b)) || (close(s.a, t.b) && close(s.b, t.a));
}

std::string describe(const InterpolationCenter& c) {
  if (c.is_point()) {
    const auto p = c.point().position;
    return fmt::format("point ({}, {}, {})", p.x, p.y, p.z);
  }
  const auto& s = c.segment();
  return fmt::format("segment ({}, {}, {})-({}, {}, {})", s.a.x, s.a.y, s.a.z, s.b.x, s.b.y, s.b.z);
}

std::string fmt_real(double v) { return fmt::format("{:.17g}", v); }

}  // namespace

std::string_view to_string(BasisType type) {
  switch (type) {
    case BasisType::Gaussian: return "gaussian";
    case BasisType::MQ: return "mq";
    case BasisType::IMQ: return "imq";
    case BasisType::TPS: return "tps";
  }
  return "?";
}

BasisType parse_basis_type(std::string_view name) {
  const auto n = lower(name);
  if (n == "gaussian") return BasisType::Gaussian;
  if (n == "mq") return BasisType::MQ;
  if (n == "imq") return BasisType::IMQ;
  if (n == "tps") return BasisType::TPS;
  throw ValidationError("unknown basis '" + std::string(name) + "' (expected gaussian, mq, imq or tps)");
}

void validate(const BasisKind& basis) {
  if (basis.type == BasisType::TPS) return;
  if (!(basis.c > 0.0) || !std::isfinite(basis.c))
    throw ValidationError("shape parameter must be positive, got " + fmt_real(basis.c));
}

LinearSystem assemble_matrix(std::span<const InterpolationCenter> centers, const BasisKind& basis, double lambda,
                             CenterMode mode) {
  validate(basis);
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ValidationError("regularization must be >= 0");
  const std::size_t n = centers.size();
  if (n == 0) throw ValidationError("no interpolation centers");
  if (mode == CenterMode::Isotropic) {
    for (const auto& c : centers)
      if (!c.is_point()) throw ValidationError("isotropic assembly accepts point centers only");
  }

  LinearSystem sys{DenseMatrix(n), std::vector<double>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    sys.rhs[j] = centers[j].value();
    sys.matrix(j, j) = eval_basis(basis, 0.0) + lambda;
    for (std::size_t i = j + 1; i < n; ++i) {
      if (same_site(centers[j], centers[i]))
        throw DuplicateCenterError("centers " + std::to_string(j) + " and " + std::to_string(i) + " coincide at " +
                                   describe(centers[j]) + "; the input mesh is degenerate");
      const double r = mode == CenterMode::Isotropic
                           ? dist_point_point(centers[j].point().position, centers[i].point().position)
                           : pairwise_distance(centers[j], centers[i]);
      const double phi = eval_basis(basis, r);
      sys.matrix(j, i) = phi;
      sys.matrix(i, j) = phi;
    }
  }
  return sys;
}

LinearSystem assemble_matrix(std::span<const InterpolationCenter> centers, const BasisKind& basis, double lambda) {
  return assemble_matrix(centers, basis, lambda, CenterMode::Anisotropic);
}

namespace {

LuDecomposition factorize(const DenseMatrix& a) {
  try {
    return LuDecomposition(a);
  } catch (const SingularMatrixError& e) {
    throw SingularMatrixError(std::string("interpolation matrix is singular: ") + e.what() +
                              "; the center set is ill-posed, try a positive regularization (--lambda)");
  }
}

}  // namespace

std::vector<double> solve_weights(const DenseMatrix& a, std::span<const double> rhs) {
  if (rhs.size() != a.size()) throw ValidationError("rhs length does not match the matrix");
  for (double v : a.data())
    if (!std::isfinite(v)) throw SingularMatrixError("interpolation matrix has non-finite entries");
  return factorize(a).solve(rhs);
}

InterpolationModel fit(std::vector<InterpolationCenter> centers, const BasisKind& basis, CenterMode mode,
                       double lambda) {
  const LinearSystem sys = assemble_matrix(centers, basis, lambda, mode);
  for (double v : sys.matrix.data())
    if (!std::isfinite(v)) throw SingularMatrixError("interpolation matrix has non-finite entries");
  const LuDecomposition lu = factorize(sys.matrix);

  InterpolationModel model;
  model.weights = lu.solve(sys.rhs);
  for (double w : model.weights)
    if (!std::isfinite(w)) throw SingularMatrixError("solve produced non-finite weights; try --lambda");
  model.centers = std::move(centers);
  model.basis = basis;
  model.mode = mode;
  model.lambda = lambda;
  model.pivot_ratio = lu.pivot_ratio();
  model.residual = residual_inf_norm(sys.matrix, model.weights, sys.rhs);
  return model;
}

double evaluate(const InterpolationModel& model, Point3 x) {
  double sum = 0.0;
  for (std::size_t i = 0; i < model.centers.size(); ++i)
    sum += model.weights[i] * eval_basis(model.basis, model.centers[i].distance_to(x));
  return sum;
}

std::string format_model(const InterpolationModel& model) {
  std::string out = "ARBF1\n";
  out += fmt::format("{} {}\n", to_string(model.basis.type), fmt_real(model.basis.c));
  out += fmt_real(model.lambda) + '\n';
  out += fmt::format("{}\n", model.centers.size());
  for (const auto& c : model.centers) {
    if (c.is_point()) {
      const auto& p = c.point();
      out += fmt::format("P {} {} {} {}\n", fmt_real(p.position.x), fmt_real(p.position.y), fmt_real(p.position.z),
                         fmt_real(p.value));
    } else {
      const auto& s = c.segment();
      out += fmt::format("S {} {} {} {} {} {} {}\n", fmt_real(s.a.x), fmt_real(s.a.y), fmt_real(s.a.z),
                         fmt_real(s.b.x), fmt_real(s.b.y), fmt_real(s.b.z), fmt_real(s.value));
    }
  }
  for (double w : model.weights) out += fmt_real(w) + '\n';
  return out;
}

void write_model(const InterpolationModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << format_model(model);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

namespace {

InterpolationModel parse_model_from(TextReader& in) {
  auto magic = in.next_line();
  if (magic.size() != 1 || magic[0] != "ARBF1") throw ParseError(in.name() + ": missing ARBF1 magic", in.line_number());

  InterpolationModel model;
  auto basis = in.next_line();
  if (basis.size() != 2) throw ParseError(in.name() + ": expected '<basis> <c>'", in.line_number());
  try {
    model.basis = {parse_basis_type(basis[0]), in.to_real(basis[1])};
    validate(model.basis);
  } catch (const ValidationError& e) {
    throw ParseError(in.name() + ": " + e.what(), in.line_number());
  }
  auto lambda = in.next_line();
  if (lambda.size() != 1) throw ParseError(in.name() + ": expected regularization value", in.line_number());
  model.lambda = in.to_real(lambda[0]);
  if (model.lambda < 0.0) throw ParseError(in.name() + ": regularization must be >= 0", in.line_number());
  auto count = in.next_line();
  if (count.size() != 1) throw ParseError(in.name() + ": expected center count", in.line_number());
  const std::size_t n = in.to_size(count[0]);
  if (n == 0) throw ParseError(in.name() + ": model has no centers", in.line_number());

  bool any_segment = false;
  model.centers.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto tok = in.next_line();
    if (tok[0] == "P" && tok.size() == 5) {
      model.centers.emplace_back(
          NodalValue{{in.to_real(tok[1]), in.to_real(tok[2]), in.to_real(tok[3])}, in.to_real(tok[4])});
    } else if (tok[0] == "S" && tok.size() == 8) {
      model.centers.emplace_back(CenterSegment{{in.to_real(tok[1]), in.to_real(tok[2]), in.to_real(tok[3])},
                                               {in.to_real(tok[4]), in.to_real(tok[5]), in.to_real(tok[6])},
                                               in.to_real(tok[7])});
      any_segment = true;
    } else {
      throw ParseError(in.name() + ": expected 'P x y z v' or 'S ax ay az bx by bz v'", in.line_number());
    }
  }
  model.weights.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto tok = in.next_line();
    if (tok.size() != 1) throw ParseError(in.name() + ": expected one weight per line", in.line_number());
    model.weights.push_back(in.to_real(tok[0]));
  }
  if (!in.at_end()) throw ParseError(in.name() + ": trailing data after weights", in.line_number() + 1);
  model.mode = any_segment ? CenterMode::Anisotropic : CenterMode::Isotropic;
  return model;
}

}  // namespace

InterpolationModel parse_model(std::string_view text) {
  TextReader in(std::string(text), "<model>");
  return parse_model_from(in);
}

InterpolationModel read_model(const std::filesystem::path& path) {
  TextReader in(path);
  return parse_model_from(in);
}

}  // namespace arbf
