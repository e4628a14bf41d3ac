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

#include "arbf/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "arbf/errors.hpp"

namespace arbf {

std::uint64_t SplitMix64::next_below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r = next();
  while (r >= limit) r = next();
  return r % bound;
}

std::pair<double, double> SplitMix64::next_gaussian_pair() {
  double u1 = next_double();
  while (u1 == 0.0) u1 = next_double();
  const double u2 = next_double();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

namespace {

Point3 random_direction(SplitMix64& rng, bool planar) {
  while (true) {
    const auto [g1, g2] = rng.next_gaussian_pair();
    Point3 d{g1, g2, 0.0};
    if (!planar) d.z = rng.next_gaussian_pair().first;
    const double len = norm(d);
    if (len > 1e-12) return (1.0 / len) * d;
  }
}

}  // namespace

VolumetricMesh perturb_mesh(const VolumetricMesh& mesh, const PerturbSpec& spec) {
  if (!(spec.magnitude >= 0.0 && spec.magnitude <= kMaxPerturbMagnitude))
    throw ValidationError("perturbation magnitude must lie in [0, 0.3]");
  if (!(spec.vertex_fraction >= 0.0 && spec.vertex_fraction <= 1.0))
    throw ValidationError("vertex fraction must lie in [0, 1]");

  const std::size_t nv = mesh.vertices.size();
  std::vector<double> shortest(nv, std::numeric_limits<double>::infinity());
  for (const auto& e : mesh_edges(mesh)) {
    const double len = dist_point_point(mesh.vertices[e[0]], mesh.vertices[e[1]]);
    shortest[e[0]] = std::min(shortest[e[0]], len);
    shortest[e[1]] = std::min(shortest[e[1]], len);
  }

  SplitMix64 rng(spec.seed);
  const auto count = std::min<std::size_t>(
      nv, static_cast<std::size_t>(std::ceil(spec.vertex_fraction * static_cast<double>(nv))));
  std::vector<std::uint32_t> order(nv);
  std::iota(order.begin(), order.end(), 0U);
  for (std::size_t i = 0; i < count; ++i) std::swap(order[i], order[i + rng.next_below(nv - i)]);

  VolumetricMesh out = mesh;
  const bool planar = mesh.kind == MeshKind::Tri2D;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint32_t v = order[i];
    const Point3 dir = random_direction(rng, planar);
    if (!std::isfinite(shortest[v])) continue;  // not referenced by any cell
    out.vertices[v] = mesh.vertices[v] + (spec.magnitude * shortest[v]) * dir;
  }

  const double threshold = degenerate_measure_threshold(mesh);
  for (std::size_t c = 0; c < out.cell_count(); ++c) {
    const double before = cell_measure(mesh, c);
    const double after = cell_measure(out, c);
    if (!(std::abs(after) > threshold) || (before > 0.0) != (after > 0.0))
      throw DegenerateResultError("cell " + std::to_string(c) +
                                  " collapsed or inverted after perturbation; reduce the magnitude");
  }
  return out;
}

}  // namespace arbf
