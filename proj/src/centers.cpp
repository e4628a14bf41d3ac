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

#include "arbf/centers.hpp"

namespace arbf {

double pairwise_distance(const InterpolationCenter& ci, const InterpolationCenter& cj) {
  if (ci.is_point() && cj.is_point()) return dist_point_point(ci.point().position, cj.point().position);
  if (ci.is_point()) return dist_point_segment(ci.point().position, cj.segment().a, cj.segment().b);
  if (cj.is_point()) return dist_point_segment(cj.point().position, ci.segment().a, ci.segment().b);
  const auto& s = ci.segment();
  const auto& t = cj.segment();
  return dist_segment_segment(s.a, s.b, t.a, t.b);
}

std::vector<InterpolationCenter> assemble_center_set(const VolumetricMesh& mesh, CenterMode mode) {
  const MeshCenters centers = compute_centers(mesh);
  std::vector<InterpolationCenter> out;
  const auto add_points = [&out](const std::vector<NodalValue>& nodes) {
    for (const auto& n : nodes) out.emplace_back(n);
  };

  add_points(centers.vertices);
  add_points(centers.edges);
  if (mode == CenterMode::Isotropic) {
    add_points(centers.tiles);
    add_points(centers.cells);
    return out;
  }
  for (const auto& s : build_segments(mesh)) out.emplace_back(s);
  return out;
}

}  // namespace arbf
