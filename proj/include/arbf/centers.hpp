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

#include <span>
#include <variant>
#include <vector>

#include "arbf/mesh.hpp"

namespace arbf {

enum class CenterMode { Isotropic, Anisotropic };

/// A point or segment at which one basis function is anchored.
class InterpolationCenter {
 public:
  InterpolationCenter(NodalValue point) : site_(point) {}
  InterpolationCenter(CenterSegment segment) : site_(segment) {}

  bool is_point() const { return std::holds_alternative<NodalValue>(site_); }
  bool is_segment() const { return std::holds_alternative<CenterSegment>(site_); }
  const NodalValue& point() const { return std::get<NodalValue>(site_); }
  const CenterSegment& segment() const { return std::get<CenterSegment>(site_); }

  double value() const {
    return is_point() ? point().value : segment().value;
  }

  /// Distance from an arbitrary location to this center.
  double distance_to(Point3 x) const {
    if (const auto* p = std::get_if<NodalValue>(&site_)) return dist_point_point(x, p->position);
    const auto& s = std::get<CenterSegment>(site_);
    return dist_point_segment(x, s.a, s.b);
  }

  friend bool operator==(const InterpolationCenter& l, const InterpolationCenter& r) {
    if (l.is_point() != r.is_point()) return false;
    if (l.is_point()) return l.point().position == r.point().position && l.point().value == r.point().value;
    return l.segment().a == r.segment().a && l.segment().b == r.segment().b &&
           l.segment().value == r.segment().value;
  }

 private:
  std::variant<NodalValue, CenterSegment> site_;
};

/// Distance between two centers: point/point, point/segment in either order,
/// or the endpoint-minimum segment/segment rule.
double pairwise_distance(const InterpolationCenter& ci, const InterpolationCenter& cj);

/// Isotropic: every nodal value from compute_centers as a point center.
/// Anisotropic: vertices and edge centers as points, plus every segment from
/// build_segments. Tile/face and cell centers then exist only as segment
/// endpoints.
std::vector<InterpolationCenter> assemble_center_set(const VolumetricMesh& mesh, CenterMode mode);

}  // namespace arbf
