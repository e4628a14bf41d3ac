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

#include "arbf/isosurface.hpp"

#include <fmt/format.h>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>

#include "arbf/errors.hpp"
#include "mc_tables.hpp"
#include "text_reader.hpp"

namespace arbf {
namespace {

// Corner offsets in Bourke's numbering.
constexpr int kCorner[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                               {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
constexpr int kEdgeCorners[12][2] = {{0, 1}, {1, 2}, {3, 2}, {0, 3}, {4, 5}, {5, 6},
                                     {7, 6}, {4, 7}, {0, 4}, {1, 5}, {2, 6}, {3, 7}};

// Crossing on the lattice edge from corner `lo` to corner `hi` (hi is the
// corner with the larger coordinate along the edge's axis). The two off-axis
// coordinates stay on lattice lines; t = 0 and t = 1 land exactly on corners.
Point3 edge_crossing(const VoxelGrid& grid, const std::array<std::size_t, 3>& lo, int axis, double v_lo,
                     double v_hi, double iso) {
  const double t = (iso - v_lo) / (v_hi - v_lo);
  Point3 p = grid.position(lo[0], lo[1], lo[2]);
  const double a = p[axis];
  const double b = a + grid.spacing[static_cast<std::size_t>(axis)];
  p[axis] = (1.0 - t) * a + t * b;
  return p;
}

using RawTriangles = std::vector<std::array<Point3, 3>>;

void march_slab(const VoxelGrid& grid, double iso, std::size_t k, RawTriangles& out) {
  for (std::size_t j = 0; j + 1 < grid.ny(); ++j) {
    for (std::size_t i = 0; i + 1 < grid.nx(); ++i) {
      double v[8];
      int cube = 0;
      for (int c = 0; c < 8; ++c) {
        v[c] = grid.at(i + kCorner[c][0], j + kCorner[c][1], k + kCorner[c][2]);
        if (v[c] < iso) cube |= 1 << c;
      }
      const int edges = detail::kMcEdgeTable[cube];
      if (edges == 0) continue;

      Point3 verts[12];
      for (int e = 0; e < 12; ++e) {
        if (!(edges & (1 << e))) continue;
        const int c0 = kEdgeCorners[e][0];
        const int c1 = kEdgeCorners[e][1];
        int axis = 0;
        while (kCorner[c0][axis] == kCorner[c1][axis]) ++axis;
        const std::array<std::size_t, 3> lo{i + kCorner[c0][0], j + kCorner[c0][1], k + kCorner[c0][2]};
        verts[e] = edge_crossing(grid, lo, axis, v[c0], v[c1], iso);
      }
      const int* tri = detail::kMcTriTable[cube];
      for (int t = 0; tri[t] != -1; t += 3) out.push_back({verts[tri[t]], verts[tri[t + 1]], verts[tri[t + 2]]});
    }
  }
}

TriangleSoup to_soup(const RawTriangles& tris) {
  TriangleSoup soup;
  soup.vertices.reserve(3 * tris.size());
  soup.triangles.reserve(tris.size());
  for (const auto& t : tris) {
    const auto base = static_cast<std::uint32_t>(soup.vertices.size());
    soup.vertices.insert(soup.vertices.end(), t.begin(), t.end());
    soup.triangles.push_back({base, base + 1, base + 2});
  }
  return soup;
}

double grid_diagonal(const VoxelGrid& grid) {
  Point3 extent;
  for (int a = 0; a < 3; ++a)
    extent[a] = grid.spacing[static_cast<std::size_t>(a)] * static_cast<double>(grid.dims[static_cast<std::size_t>(a)] - 1);
  return norm(extent);
}

double triangle_area(Point3 a, Point3 b, Point3 c) { return 0.5 * norm(cross(b - a, c - a)); }

constexpr double kMinTriangleArea = 1e-14;

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.empty()) throw IoError("empty output path");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::string vertex_line(Point3 p) { return fmt::format("v {:.17g} {:.17g} {:.17g}\n", p.x, p.y, p.z); }

}  // namespace

TriangleSoup marching_cubes_raw(const VoxelGrid& grid, double iso) {
  if (grid.nx() < 2 || grid.ny() < 2 || grid.nz() < 2) return {};
  RawTriangles tris;
  for (std::size_t k = 0; k + 1 < grid.nz(); ++k) march_slab(grid, iso, k, tris);
  return to_soup(tris);
}

TriangleSoup marching_cubes(const VoxelGrid& grid, double iso, int workers) {
  if (grid.nx() < 2 || grid.ny() < 2 || grid.nz() < 2) return {};
  const long long slabs = static_cast<long long>(grid.nz() - 1);
  std::vector<RawTriangles> per_slab(static_cast<std::size_t>(slabs));
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long long k = 0; k < slabs; ++k) march_slab(grid, iso, static_cast<std::size_t>(k), per_slab[static_cast<std::size_t>(k)]);

  RawTriangles all;
  std::size_t total = 0;
  for (const auto& s : per_slab) total += s.size();
  all.reserve(total);
  for (auto& s : per_slab) all.insert(all.end(), s.begin(), s.end());
  return weld(to_soup(all), 1e-9 * grid_diagonal(grid));
}

TriangleSoup weld(const TriangleSoup& soup, double tolerance) {
  using Key = std::array<long long, 3>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = 1469598103934665603ULL;
      for (long long v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
      return h;
    }
  };
  const double step = tolerance > 0.0 ? tolerance : 1e-12;

  TriangleSoup out;
  std::unordered_map<Key, std::uint32_t, KeyHash> index;
  index.reserve(soup.vertices.size());
  std::vector<std::uint32_t> remap(soup.vertices.size());
  for (std::size_t v = 0; v < soup.vertices.size(); ++v) {
    const Point3 p = soup.vertices[v];
    const Key key{std::llround(p.x / step), std::llround(p.y / step), std::llround(p.z / step)};
    const auto [it, inserted] = index.emplace(key, static_cast<std::uint32_t>(out.vertices.size()));
    if (inserted) out.vertices.push_back(p);
    remap[v] = it->second;
  }
  out.triangles.reserve(soup.triangles.size());
  for (const auto& t : soup.triangles) {
    const std::array<std::uint32_t, 3> w{remap[t[0]], remap[t[1]], remap[t[2]]};
    if (w[0] == w[1] || w[1] == w[2] || w[0] == w[2]) continue;
    if (!(triangle_area(out.vertices[w[0]], out.vertices[w[1]], out.vertices[w[2]]) > kMinTriangleArea)) continue;
    out.triangles.push_back(w);
  }

  // Drop vertices no surviving triangle references.
  std::vector<std::uint32_t> used(out.vertices.size(), UINT32_MAX);
  TriangleSoup compact;
  for (auto& t : out.triangles) {
    for (auto& idx : t) {
      if (used[idx] == UINT32_MAX) {
        used[idx] = static_cast<std::uint32_t>(compact.vertices.size());
        compact.vertices.push_back(out.vertices[idx]);
      }
      idx = used[idx];
    }
  }
  compact.triangles = std::move(out.triangles);
  return compact;
}

double surface_area(const TriangleSoup& soup) {
  double area = 0.0;
  for (const auto& t : soup.triangles) area += triangle_area(soup.vertices[t[0]], soup.vertices[t[1]], soup.vertices[t[2]]);
  return area;
}

long euler_characteristic(const TriangleSoup& soup) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(3 * soup.triangles.size());
  for (const auto& t : soup.triangles) {
    for (int e = 0; e < 3; ++e) {
      const auto a = t[static_cast<std::size_t>(e)];
      const auto b = t[static_cast<std::size_t>((e + 1) % 3)];
      edges.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::sort(edges.begin(), edges.end());
  const auto unique_edges = std::unique(edges.begin(), edges.end()) - edges.begin();
  return static_cast<long>(soup.vertices.size()) - static_cast<long>(unique_edges) +
         static_cast<long>(soup.triangles.size());
}

ContourSet marching_squares(const VoxelGrid& grid, double iso) {
  if (grid.nz() != 1) throw ValidationError("marching squares needs a single-slice grid (nz = 1)");
  ContourSet out;
  if (grid.nx() < 2 || grid.ny() < 2) return out;

  // Lattice edge id: 2 * vertex index + (0 for +x, 1 for +y).
  using EdgeId = std::size_t;
  const auto x_edge = [&](std::size_t i, std::size_t j) -> EdgeId { return 2 * grid.index(i, j, 0); };
  const auto y_edge = [&](std::size_t i, std::size_t j) -> EdgeId { return 2 * grid.index(i, j, 0) + 1; };

  std::map<EdgeId, Point3> crossing;
  std::vector<std::array<EdgeId, 2>> segments;

  for (std::size_t j = 0; j + 1 < grid.ny(); ++j) {
    for (std::size_t i = 0; i + 1 < grid.nx(); ++i) {
      const double v[4] = {grid.at(i, j, 0), grid.at(i + 1, j, 0), grid.at(i + 1, j + 1, 0), grid.at(i, j + 1, 0)};
      int cell = 0;
      for (int c = 0; c < 4; ++c)
        if (v[c] >= iso) cell |= 1 << c;
      if (cell == 0 || cell == 15) continue;

      // Cell edges: 0 bottom, 1 right, 2 top, 3 left.
      const EdgeId ids[4] = {x_edge(i, j), y_edge(i + 1, j), x_edge(i, j + 1), y_edge(i, j)};
      const auto cross_at = [&](int e) {
        if (crossing.count(ids[e])) return;
        const std::array<std::size_t, 3> lo = e == 0   ? std::array<std::size_t, 3>{i, j, 0}
                                              : e == 1 ? std::array<std::size_t, 3>{i + 1, j, 0}
                                              : e == 2 ? std::array<std::size_t, 3>{i, j + 1, 0}
                                                       : std::array<std::size_t, 3>{i, j, 0};
        const int axis = (e == 0 || e == 2) ? 0 : 1;
        const double v_lo = grid.at(lo[0], lo[1], 0);
        const double v_hi = axis == 0 ? grid.at(lo[0] + 1, lo[1], 0) : grid.at(lo[0], lo[1] + 1, 0);
        crossing.emplace(ids[e], edge_crossing(grid, lo, axis, v_lo, v_hi, iso));
      };
      const auto emit = [&](int e0, int e1) {
        cross_at(e0);
        cross_at(e1);
        segments.push_back({ids[e0], ids[e1]});
      };
      const bool center_above = 0.25 * (v[0] + v[1] + v[2] + v[3]) >= iso;

      switch (cell) {
        case 1: case 14: emit(3, 0); break;
        case 2: case 13: emit(0, 1); break;
        case 3: case 12: emit(3, 1); break;
        case 4: case 11: emit(1, 2); break;
        case 6: case 9: emit(0, 2); break;
        case 7: case 8: emit(3, 2); break;
        case 5:
          if (center_above) { emit(0, 1); emit(2, 3); } else { emit(3, 0); emit(1, 2); }
          break;
        case 10:
          if (center_above) { emit(3, 0); emit(1, 2); } else { emit(0, 1); emit(2, 3); }
          break;
        default: break;
      }
    }
  }

  // Chain segments that share a lattice edge crossing.
  std::map<EdgeId, std::vector<std::size_t>> incident;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    incident[segments[s][0]].push_back(s);
    incident[segments[s][1]].push_back(s);
  }
  std::vector<bool> used(segments.size(), false);
  const auto walk = [&](std::size_t first, EdgeId start) {
    std::vector<Point3> line{crossing.at(start)};
    std::size_t seg = first;
    EdgeId at = start;
    while (true) {
      used[seg] = true;
      at = segments[seg][0] == at ? segments[seg][1] : segments[seg][0];
      line.push_back(crossing.at(at));
      std::size_t next = segments.size();
      for (std::size_t cand : incident[at])
        if (!used[cand]) next = cand;
      if (next == segments.size()) break;
      seg = next;
    }
    out.polylines.push_back(std::move(line));
  };
  for (const auto& [edge, segs] : incident) {
    if (segs.size() == 1 && !used[segs[0]]) walk(segs[0], edge);
  }
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (!used[s]) walk(s, segments[s][0]);
  }
  return out;
}

double total_length(const ContourSet& contours) {
  double len = 0.0;
  for (const auto& line : contours.polylines)
    for (std::size_t i = 1; i < line.size(); ++i) len += norm(line[i] - line[i - 1]);
  return len;
}

void export_obj(const TriangleSoup& soup, const std::filesystem::path& path) {
  std::string text;
  text.reserve(soup.vertices.size() * 64 + soup.triangles.size() * 24);
  for (const auto& p : soup.vertices) text += vertex_line(p);
  for (const auto& t : soup.triangles) text += fmt::format("f {} {} {}\n", t[0] + 1, t[1] + 1, t[2] + 1);
  write_file(path, text);
}

void export_obj(const ContourSet& contours, const std::filesystem::path& path) {
  std::string text;
  std::size_t base = 1;
  for (const auto& line : contours.polylines)
    for (const auto& p : line) text += vertex_line(p);
  for (const auto& line : contours.polylines) {
    text += 'l';
    for (std::size_t i = 0; i < line.size(); ++i) text += fmt::format(" {}", base + i);
    text += '\n';
    base += line.size();
  }
  write_file(path, text);
}

TriangleSoup read_obj(const std::filesystem::path& path) {
  TextReader in(path);
  TriangleSoup soup;
  while (!in.at_end()) {
    const auto tok = in.next_line();
    if (tok[0] == "v") {
      if (tok.size() < 4) throw ParseError(in.name() + ": vertex needs 3 coordinates", in.line_number());
      soup.vertices.push_back({in.to_real(tok[1]), in.to_real(tok[2]), in.to_real(tok[3])});
    } else if (tok[0] == "f") {
      if (tok.size() < 4) throw ParseError(in.name() + ": face needs at least 3 vertices", in.line_number());
      std::vector<std::uint32_t> face;
      for (std::size_t k = 1; k < tok.size(); ++k) {
        const std::string head = tok[k].substr(0, tok[k].find('/'));
        long long idx = in.to_integer(head);
        if (idx < 0) idx += static_cast<long long>(soup.vertices.size()) + 1;
        if (idx < 1 || idx > static_cast<long long>(soup.vertices.size()))
          throw ParseError(in.name() + ": face index out of range", in.line_number());
        face.push_back(static_cast<std::uint32_t>(idx - 1));
      }
      for (std::size_t k = 1; k + 1 < face.size(); ++k) soup.triangles.push_back({face[0], face[k], face[k + 1]});
    }
  }
  return soup;
}

void export_pgm(const VoxelGrid& grid, const std::filesystem::path& path, double lo, double hi) {
  if (grid.nz() != 1) throw ValidationError("PGM export needs a single-slice grid (nz = 1)");
  if (!(lo < hi)) throw ValidationError("PGM range needs lo < hi");
  std::string text = fmt::format("P5\n{} {}\n255\n", grid.nx(), grid.ny());
  for (std::size_t row = 0; row < grid.ny(); ++row) {
    const std::size_t j = grid.ny() - 1 - row;
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const double v = std::clamp(static_cast<double>(grid.at(i, j, 0)), lo, hi);
      const double scaled = std::floor(255.0 * (v - lo) / (hi - lo) + 0.5);
      text += static_cast<char>(static_cast<unsigned char>(std::clamp(scaled, 0.0, 255.0)));
    }
  }
  write_file(path, text);
}

}  // namespace arbf
