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

// Meshes and scratch directories shared by the test binaries.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "arbf/mesh.hpp"

namespace arbf::testing {

inline std::filesystem::path scratch_dir(const std::string& name) {
  const char* env = std::getenv("ARBF_TEST_TMP");
  std::filesystem::path root = env != nullptr ? std::filesystem::path(env)
                                              : std::filesystem::temp_directory_path() / "arbf_tests";
  auto dir = root / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline VolumetricMesh single_triangle() {
  return {MeshKind::Tri2D, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {0, 1, 2}};
}

inline VolumetricMesh unit_tet() {
  return {MeshKind::Tet, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {0, 1, 2, 3}};
}

/// Regular tetrahedron with unit circumradius, centered at the origin.
inline VolumetricMesh regular_tet() {
  const double s = std::sqrt(8.0 / 9.0), t = std::sqrt(2.0 / 9.0), u = std::sqrt(2.0 / 3.0);
  return {MeshKind::Tet, {{0, 0, 1}, {s, 0, -1.0 / 3.0}, {-t, u, -1.0 / 3.0}, {-t, -u, -1.0 / 3.0}}, {0, 1, 2, 3}};
}

/// Unit tet plus its mirror through the face x + y + z = 1.
inline VolumetricMesh two_tets() {
  return {MeshKind::Tet, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}, {0, 1, 2, 3, 4, 2, 1, 3}};
}

/// nx * ny * nz unit hexahedra in VTK corner order.
inline VolumetricMesh hex_block(int nx, int ny, int nz) {
  VolumetricMesh mesh;
  mesh.kind = MeshKind::Hex;
  const auto id = [&](int i, int j, int k) { return static_cast<std::uint32_t>(i + (nx + 1) * (j + (ny + 1) * k)); };
  for (int k = 0; k <= nz; ++k)
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i) mesh.vertices.push_back({double(i), double(j), double(k)});
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const std::uint32_t c[8] = {id(i, j, k),         id(i + 1, j, k),         id(i + 1, j + 1, k),
                                    id(i, j + 1, k),     id(i, j, k + 1),         id(i + 1, j, k + 1),
                                    id(i + 1, j + 1, k + 1), id(i, j + 1, k + 1)};
        mesh.cells.insert(mesh.cells.end(), c, c + 8);
      }
  return mesh;
}

inline VolumetricMesh unit_hex() { return hex_block(1, 1, 1); }

/// Regular icosahedron (circumradius ~1.9) split into 20 tetrahedra that
/// share a vertex at the origin. Faces are found by enumerating vertex
/// triples whose sides all have the edge length 2.
inline VolumetricMesh icosahedron20() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  VolumetricMesh mesh;
  mesh.kind = MeshKind::Tet;
  for (double s1 : {-1.0, 1.0})
    for (double s2 : {-1.0, 1.0}) {
      mesh.vertices.push_back({0.0, s1, s2 * phi});
      mesh.vertices.push_back({s1, s2 * phi, 0.0});
      mesh.vertices.push_back({s2 * phi, 0.0, s1});
    }
  const auto center = static_cast<std::uint32_t>(mesh.vertices.size());
  mesh.vertices.push_back({0.0, 0.0, 0.0});
  const auto is_edge = [&](std::uint32_t a, std::uint32_t b) {
    return std::abs(norm(mesh.vertices[a] - mesh.vertices[b]) - 2.0) < 1e-9;
  };
  for (std::uint32_t a = 0; a < 12; ++a)
    for (std::uint32_t b = a + 1; b < 12; ++b)
      for (std::uint32_t c = b + 1; c < 12; ++c) {
        if (!(is_edge(a, b) && is_edge(b, c) && is_edge(a, c))) continue;
        const Point3 o = mesh.vertices[center];
        const bool positive =
            dot(mesh.vertices[a] - o, cross(mesh.vertices[b] - o, mesh.vertices[c] - o)) > 0.0;
        if (positive) {
          mesh.cells.insert(mesh.cells.end(), {center, a, b, c});
        } else {
          mesh.cells.insert(mesh.cells.end(), {center, a, c, b});
        }
      }
  return mesh;
}

}  // namespace arbf::testing
