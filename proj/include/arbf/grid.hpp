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
#include <cstddef>
#include <filesystem>
#include <functional>
#include <variant>
#include <vector>

#include "arbf/geometry.hpp"
#include "arbf/rbf.hpp"
#include "arbf/tpms.hpp"

namespace arbf {

/// Axis-aligned scalar lattice. Values are float32, x-fastest, then y, then z.
struct VoxelGrid {
  Point3 origin;
  std::array<double, 3> spacing{1.0, 1.0, 1.0};
  std::array<std::size_t, 3> dims{0, 0, 0};
  std::vector<float> values;

  std::size_t nx() const { return dims[0]; }
  std::size_t ny() const { return dims[1]; }
  std::size_t nz() const { return dims[2]; }
  std::size_t voxel_count() const { return dims[0] * dims[1] * dims[2]; }

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return i + dims[0] * (j + dims[1] * k); }
  std::array<std::size_t, 3> ijk(std::size_t idx) const {
    return {idx % dims[0], (idx / dims[0]) % dims[1], idx / (dims[0] * dims[1])};
  }
  Point3 position(std::size_t i, std::size_t j, std::size_t k) const {
    return {origin.x + static_cast<double>(i) * spacing[0], origin.y + static_cast<double>(j) * spacing[1],
            origin.z + static_cast<double>(k) * spacing[2]};
  }
  float at(std::size_t i, std::size_t j, std::size_t k) const { return values[index(i, j, k)]; }

  friend bool operator==(const VoxelGrid&, const VoxelGrid&) = default;
};

/// Lattice over [bbox_min, bbox_max] grown by pad_fraction * diagonal on
/// every side. The longest axis receives `resolution` samples, the others
/// round(resolution * extent / longest) with a floor of 2. Samples include
/// both box faces. Throws InvalidBBoxError.
VoxelGrid make_grid(Point3 bbox_min, Point3 bbox_max, std::size_t resolution, double pad_fraction);

/// Single-slice (nz = 1) variant at z = bbox_min.z for planar meshes; only the
/// x and y extents must be positive.
VoxelGrid make_grid_2d(Point3 bbox_min, Point3 bbox_max, std::size_t resolution, double pad_fraction);

/// What to sample: a fitted interpolation model or a TPMS function.
using FieldSource = std::variant<std::reference_wrapper<const InterpolationModel>, TpmsKind>;

double eval_field(const FieldSource& source, Point3 p);

/// Worker count from ARBF_WORKERS (unset, invalid or 0 means automatic).
int workers_from_env();

/// Fills `grid` with the field at every sample position. Voxels are split
/// across `workers` OpenMP threads (0 = runtime default); each voxel is
/// computed independently, so the output does not depend on the count.
VoxelGrid sample_field(const FieldSource& source, VoxelGrid grid, int workers = 0);

/// Single-threaded reference for sample_field.
VoxelGrid sample_field_serial(const FieldSource& source, VoxelGrid grid);

/// Fraction of voxels with value >= iso.
double solid_fraction(const VoxelGrid& grid, double iso);

struct ValueRange {
  float min = 0.0F;
  float max = 0.0F;
};
ValueRange value_range(const VoxelGrid& grid);

/// Writes `<stem>.vhdr` and `<stem>.raw`.
void write_volume(const VoxelGrid& grid, const std::filesystem::path& stem);

/// Throws IoError, ParseError or HeaderMismatchError.
VoxelGrid read_volume(const std::filesystem::path& stem);

}  // namespace arbf
