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

#include <array>
#include <cmath>

namespace arbf {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Point3 operator*(double s, Point3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend constexpr Point3 operator*(Point3 a, double s) { return s * a; }
  friend constexpr bool operator==(Point3 a, Point3 b) = default;

  constexpr double& operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }
  constexpr double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
};

constexpr double dot(Point3 a, Point3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Point3 cross(Point3 a, Point3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Point3 a) { return std::sqrt(dot(a, a)); }
inline bool is_finite(Point3 a) { return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z); }

/// Tolerance below which a point counts as lying on a segment.
inline constexpr double kOnSegmentTolerance = 1e-12;

enum class DistanceKind { PointPoint, PointSegment, SegmentSegment };

/// Euclidean distance.
double dist_point_point(Point3 p, Point3 q);

/// Distance from x to the segment [a, b].
///
/// With t the projection parameter of x onto the line ab, the result is
/// 0 when x lies on the segment, the perpendicular distance when the foot
/// of the perpendicular falls inside (0 <= t <= 1), and the nearer
/// endpoint distance otherwise. A degenerate segment (a == b) reduces to
/// the point distance.
double dist_point_segment(Point3 x, Point3 a, Point3 b);

/// Smallest of the four endpoint-to-endpoint distances between [a, b] and
/// [c, d]. This is not the geometric segment distance: crossing segments
/// with far-apart endpoints report a positive value.
double dist_segment_segment(Point3 a, Point3 b, Point3 c, Point3 d);

}  // namespace arbf
