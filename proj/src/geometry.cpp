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

#include "arbf/geometry.hpp"

#include <algorithm>
#include <tuple>

namespace arbf {

double dist_point_point(Point3 p, Point3 q) { return norm(p - q); }

double dist_point_segment(Point3 x, Point3 a, Point3 b) {
  // Fixed endpoint order keeps the result bit-identical under a <-> b.
  if (std::tie(b.x, b.y, b.z) < std::tie(a.x, a.y, a.z)) std::swap(a, b);
  const Point3 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return dist_point_point(x, a);

  const double t = dot(x - a, ab) / len2;
  if (t >= 0.0 && t <= 1.0) {
    const double perpendicular = norm(x - (a + t * ab));
    return perpendicular < kOnSegmentTolerance ? 0.0 : perpendicular;
  }
  return std::min(dist_point_point(x, a), dist_point_point(x, b));
}

double dist_segment_segment(Point3 a, Point3 b, Point3 c, Point3 d) {
  return std::min({dist_point_point(a, c), dist_point_point(a, d), dist_point_point(b, c),
                   dist_point_point(b, d)});
}

}  // namespace arbf
