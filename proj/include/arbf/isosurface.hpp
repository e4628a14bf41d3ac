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
#include <cstdint>
#include <filesystem>
#include <vector>

#include "arbf/geometry.hpp"
#include "arbf/grid.hpp"

namespace arbf {

struct TriangleSoup {
  std::vector<Point3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;

  bool empty() const { return triangles.empty(); }
};

struct ContourSet {
  std::vector<std::vector<Point3>> polylines;
};

/// Lorensen-Cline marching cubes. Cells whose corners are all >= iso or all
/// < iso emit nothing. Edge crossings are placed at t = (iso - v0)/(v1 - v0).
/// The raw soup is welded (quantized position, 1e-9 * grid diagonal) and
/// degenerate triangles are dropped. z-slabs run on `workers` threads and are
/// merged in slab order.
TriangleSoup marching_cubes(const VoxelGrid& grid, double iso, int workers = 0);

/// Unwelded, unthreaded extraction. Reference for tests and benchmarks.
TriangleSoup marching_cubes_raw(const VoxelGrid& grid, double iso);

/// Merges vertices closer than `tolerance` (by quantized position) and drops
/// triangles that collapse or have area <= 1e-14.
TriangleSoup weld(const TriangleSoup& soup, double tolerance);

double surface_area(const TriangleSoup& soup);
/// V - E + F over the welded mesh.
long euler_characteristic(const TriangleSoup& soup);

/// 16-case marching squares on an nz = 1 grid. Saddle cells (cases 5 and 10)
/// are split by the cell-center average. Segments are chained into polylines.
ContourSet marching_squares(const VoxelGrid& grid, double iso);

double total_length(const ContourSet& contours);

/// "v x y z" then "f a b c" lines, 1-based, 17 significant digits.
void export_obj(const TriangleSoup& soup, const std::filesystem::path& path);
/// Contours as "v" and "l" lines.
void export_obj(const ContourSet& contours, const std::filesystem::path& path);

/// Reads v/f records (polygons are fan-triangulated; other records ignored).
TriangleSoup read_obj(const std::filesystem::path& path);

/// P5 binary PGM of an nz = 1 grid, row 0 = largest y. Values are clamped to
/// [lo, hi] and mapped to floor(255 (v - lo)/(hi - lo) + 0.5).
void export_pgm(const VoxelGrid& grid, const std::filesystem::path& path, double lo, double hi);

}  // namespace arbf
