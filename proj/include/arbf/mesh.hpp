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
#include <span>
#include <string_view>
#include <vector>

#include "arbf/geometry.hpp"

namespace arbf {

enum class MeshKind { Tri2D, Tet, Hex };
enum class MeshFormat { Off, NodeEle, HexAscii };

/// Vertices per cell for a mesh kind (3, 4 or 8).
constexpr std::size_t cell_arity(MeshKind kind) {
  switch (kind) {
    case MeshKind::Tri2D: return 3;
    case MeshKind::Tet: return 4;
    case MeshKind::Hex: return 8;
  }
  return 0;
}

/// Triangle, tetrahedron or hexahedron mesh with flat cell connectivity.
///
/// Hex corners follow VTK order: bottom quad counter-clockwise (0..3),
/// then the top quad (4..7) above it.
struct VolumetricMesh {
  MeshKind kind = MeshKind::Tet;
  std::vector<Point3> vertices;
  std::vector<std::uint32_t> cells;  // cell_count() * arity indices

  std::size_t arity() const { return cell_arity(kind); }
  std::size_t cell_count() const { return cells.size() / arity(); }
  std::span<const std::uint32_t> cell(std::size_t c) const {
    return std::span<const std::uint32_t>(cells).subspan(c * arity(), arity());
  }
};

struct BoundingBox {
  Point3 min;
  Point3 max;
  double diagonal() const { return norm(max - min); }
};

BoundingBox bounding_box(std::span<const Point3> points);

/// Unique undirected vertex-index edges, each as (smaller, larger).
std::vector<std::array<std::uint32_t, 2>> mesh_edges(const VolumetricMesh& mesh);

/// Signed area (Tri2D, from the xy projection when planar) or signed volume
/// of one cell. Hex volume is the sum of a six-tetrahedron split.
double cell_measure(const VolumetricMesh& mesh, std::size_t c);

/// Degeneracy threshold for cell measures: 1e-12 * diagonal^dim.
double degenerate_measure_threshold(const VolumetricMesh& mesh);

/// Checks index range, arity, finiteness and cell measures. Throws
/// ValidationError.
void validate(const VolumetricMesh& mesh);

/// Reads a mesh. For NodeEle, `path` may name the .node file, the .ele file
/// or the bare stem. Throws ParseError, ValidationError or IoError.
VolumetricMesh load_mesh(const std::filesystem::path& path, MeshFormat format);

/// Picks a format from the extension (.off, .node/.ele, .hexmesh/.hex).
MeshFormat format_from_path(const std::filesystem::path& path);

/// Writes a mesh in the given format with 17 significant digits.
void write_mesh(const VolumetricMesh& mesh, const std::filesystem::path& path, MeshFormat format);

struct NodalValue {
  Point3 position;
  double value = 0.0;
};

/// Segment from an edge center (2D) or face center (3D) to the center of the
/// owning cell.
struct CenterSegment {
  Point3 a;  // edge / face center
  Point3 b;  // cell center
  double value = -1.0;
};

struct MeshCenters {
  std::vector<NodalValue> vertices;  // +1
  std::vector<NodalValue> edges;     // -1
  std::vector<NodalValue> tiles;     // -1; triangle centers in 2D, face centers in 3D
  std::vector<NodalValue> cells;     // -1; empty for Tri2D
};

/// Derived centers with the +1/-1 nodal assignment. Edges and faces shared
/// by neighbouring cells are reported once, in first-seen order.
MeshCenters compute_centers(const VolumetricMesh& mesh);

/// One segment per (edge center, triangle center) pair in 2D and per
/// (face center, cell center) pair in 3D. Never deduplicated across cells.
std::vector<CenterSegment> build_segments(const VolumetricMesh& mesh);

}  // namespace arbf
