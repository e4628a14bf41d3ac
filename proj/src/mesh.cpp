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

#include "arbf/mesh.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "arbf/errors.hpp"
#include "text_reader.hpp"

namespace arbf {
namespace {

using EdgeList = std::vector<std::array<int, 2>>;
using FaceList = std::vector<std::vector<int>>;

const EdgeList& local_edges(MeshKind kind) {
  static const EdgeList tri = {{0, 1}, {1, 2}, {2, 0}};
  static const EdgeList tet = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  static const EdgeList hex = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6},
                               {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7}};
  switch (kind) {
    case MeshKind::Tri2D: return tri;
    case MeshKind::Tet: return tet;
    case MeshKind::Hex: return hex;
  }
  return tri;
}

const FaceList& local_faces(MeshKind kind) {
  static const FaceList none;
  static const FaceList tet = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
  static const FaceList hex = {{0, 1, 2, 3}, {4, 5, 6, 7}, {0, 1, 5, 4},
                               {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};
  switch (kind) {
    case MeshKind::Tri2D: return none;
    case MeshKind::Tet: return tet;
    case MeshKind::Hex: return hex;
  }
  return none;
}

double signed_tet_volume(Point3 a, Point3 b, Point3 c, Point3 d) {
  return dot(b - a, cross(c - a, d - a)) / 6.0;
}

// Mean of the referenced vertices, summed in ascending index order so that a
// face seen from two cells yields bit-identical coordinates.
Point3 mean_of(const VolumetricMesh& mesh, std::vector<std::uint32_t> ids) {
  std::sort(ids.begin(), ids.end());
  Point3 sum;
  for (auto id : ids) sum = sum + mesh.vertices[id];
  return (1.0 / static_cast<double>(ids.size())) * sum;
}

std::vector<std::uint32_t> pick(std::span<const std::uint32_t> cell, std::span<const int> local) {
  std::vector<std::uint32_t> out;
  out.reserve(local.size());
  for (int l : local) out.push_back(cell[static_cast<std::size_t>(l)]);
  return out;
}

// Collapses positions that agree after quantization to a fixed step.
class PositionDedup {
 public:
  explicit PositionDedup(double step) : step_(step > 0.0 ? step : 1.0) {}

  bool insert(Point3 p) {
    const Key key{std::llround(p.x / step_), std::llround(p.y / step_), std::llround(p.z / step_)};
    return seen_.emplace(key, true).second;
  }

 private:
  using Key = std::array<long long, 3>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = 1469598103934665603ULL;
      for (long long v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
      return h;
    }
  };
  double step_;
  std::unordered_map<Key, bool, KeyHash> seen_;
};

std::string fmt_real(double v) { return fmt::format("{:.17g}", v); }

std::filesystem::path node_ele_stem(const std::filesystem::path& path) {
  const auto ext = path.extension();
  if (ext == ".node" || ext == ".ele") return std::filesystem::path(path).replace_extension();
  return path;
}

std::filesystem::path with_suffix(const std::filesystem::path& stem, const char* suffix) {
  return std::filesystem::path(stem.string() + suffix);
}

std::uint32_t checked_index(long long raw, std::size_t line) {
  if (raw < 0 || raw > static_cast<long long>(UINT32_MAX)) throw ParseError("negative or oversized vertex index", line);
  return static_cast<std::uint32_t>(raw);
}

VolumetricMesh load_off(const std::filesystem::path& path) {
  TextReader in(path);
  auto header = in.next_line();
  if (header.size() != 1 || header[0] != "OFF") throw ParseError("expected OFF header", in.line_number());
  auto counts = in.next_line();
  if (counts.size() < 2) throw ParseError("expected '<nv> <nf> <ne>'", in.line_number());
  const auto nv = in.to_size(counts[0]);
  const auto nf = in.to_size(counts[1]);

  VolumetricMesh mesh;
  mesh.kind = MeshKind::Tri2D;
  mesh.vertices.reserve(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    auto tok = in.next_line();
    if (tok.size() < 3) throw ParseError("vertex needs 3 coordinates", in.line_number());
    mesh.vertices.push_back({in.to_real(tok[0]), in.to_real(tok[1]), in.to_real(tok[2])});
  }
  mesh.cells.reserve(3 * nf);
  for (std::size_t f = 0; f < nf; ++f) {
    auto tok = in.next_line();
    if (tok.empty() || in.to_size(tok[0]) != 3 || tok.size() < 4)
      throw ParseError("only triangular faces '3 i j k' are supported", in.line_number());
    for (int k = 1; k <= 3; ++k) mesh.cells.push_back(checked_index(in.to_integer(tok[k]), in.line_number()));
  }
  return mesh;
}

VolumetricMesh load_node_ele(const std::filesystem::path& path) {
  const auto stem = node_ele_stem(path);
  VolumetricMesh mesh;
  mesh.kind = MeshKind::Tet;

  TextReader node(with_suffix(stem, ".node"));
  auto header = node.next_line();
  if (header.size() < 2) throw ParseError("expected '<nv> 3 <nattr> <nbound>'", node.line_number());
  const auto nv = node.to_size(header[0]);
  if (node.to_size(header[1]) != 3) throw ParseError(".node dimension must be 3", node.line_number());
  long long base = 0;
  for (std::size_t i = 0; i < nv; ++i) {
    auto tok = node.next_line();
    if (tok.size() < 4) throw ParseError("node line needs '<idx> x y z'", node.line_number());
    const auto idx = node.to_integer(tok[0]);
    if (i == 0) base = idx;
    if (idx != base + static_cast<long long>(i)) throw ParseError("node indices must be consecutive", node.line_number());
    mesh.vertices.push_back({node.to_real(tok[1]), node.to_real(tok[2]), node.to_real(tok[3])});
  }
  if (nv > 0 && base != 0 && base != 1) throw ParseError("first node index must be 0 or 1", 2);

  TextReader ele(with_suffix(stem, ".ele"));
  auto eh = ele.next_line();
  if (eh.size() < 2) throw ParseError("expected '<nc> 4 <nattr>'", ele.line_number());
  const auto nc = ele.to_size(eh[0]);
  if (ele.to_size(eh[1]) != 4) throw ParseError("only 4-node tetrahedra are supported", ele.line_number());
  mesh.cells.reserve(4 * nc);
  for (std::size_t c = 0; c < nc; ++c) {
    auto tok = ele.next_line();
    if (tok.size() < 5) throw ParseError("element line needs '<idx> a b c d'", ele.line_number());
    for (int k = 1; k <= 4; ++k) mesh.cells.push_back(checked_index(ele.to_integer(tok[k]) - base, ele.line_number()));
  }
  return mesh;
}

VolumetricMesh load_hex(const std::filesystem::path& path) {
  TextReader in(path);
  auto header = in.next_line();
  if (header.size() != 3 || header[0] != "HEX") throw ParseError("expected 'HEX <nv> <nc>'", in.line_number());
  const auto nv = in.to_size(header[1]);
  const auto nc = in.to_size(header[2]);
  VolumetricMesh mesh;
  mesh.kind = MeshKind::Hex;
  for (std::size_t i = 0; i < nv; ++i) {
    auto tok = in.next_line();
    if (tok.size() < 3) throw ParseError("vertex needs 3 coordinates", in.line_number());
    mesh.vertices.push_back({in.to_real(tok[0]), in.to_real(tok[1]), in.to_real(tok[2])});
  }
  mesh.cells.reserve(8 * nc);
  for (std::size_t c = 0; c < nc; ++c) {
    auto tok = in.next_line();
    if (tok.size() != 8) throw ParseError("hex cell needs 8 vertex indices", in.line_number());
    for (const auto& t : tok) mesh.cells.push_back(checked_index(in.to_integer(t), in.line_number()));
  }
  return mesh;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace

BoundingBox bounding_box(std::span<const Point3> points) {
  BoundingBox box;
  if (points.empty()) return box;
  box.min = box.max = points.front();
  for (const auto& p : points) {
    for (int a = 0; a < 3; ++a) {
      box.min[a] = std::min(box.min[a], p[a]);
      box.max[a] = std::max(box.max[a], p[a]);
    }
  }
  return box;
}

std::vector<std::array<std::uint32_t, 2>> mesh_edges(const VolumetricMesh& mesh) {
  std::vector<std::array<std::uint32_t, 2>> out;
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    const auto cell = mesh.cell(c);
    for (const auto& e : local_edges(mesh.kind)) {
      const auto a = cell[static_cast<std::size_t>(e[0])];
      const auto b = cell[static_cast<std::size_t>(e[1])];
      out.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double cell_measure(const VolumetricMesh& mesh, std::size_t c) {
  const auto cell = mesh.cell(c);
  const auto& v = mesh.vertices;
  switch (mesh.kind) {
    case MeshKind::Tri2D: {
      const Point3 a = v[cell[0]], b = v[cell[1]], cc = v[cell[2]];
      const Point3 n = cross(b - a, cc - a);
      if (a.z == b.z && b.z == cc.z) return 0.5 * n.z;
      return 0.5 * norm(n);
    }
    case MeshKind::Tet: return signed_tet_volume(v[cell[0]], v[cell[1]], v[cell[2]], v[cell[3]]);
    case MeshKind::Hex: {
      static constexpr int kSplit[6][3] = {{1, 2, 6}, {2, 3, 6}, {3, 7, 6}, {7, 4, 6}, {4, 5, 6}, {5, 1, 6}};
      double vol = 0.0;
      for (const auto& t : kSplit) vol += signed_tet_volume(v[cell[0]], v[cell[t[0]]], v[cell[t[1]]], v[cell[t[2]]]);
      return vol;
    }
  }
  return 0.0;
}

double degenerate_measure_threshold(const VolumetricMesh& mesh) {
  const double diag = bounding_box(mesh.vertices).diagonal();
  return 1e-12 * std::pow(diag, mesh.kind == MeshKind::Tri2D ? 2.0 : 3.0);
}

void validate(const VolumetricMesh& mesh) {
  const std::size_t arity = mesh.arity();
  if (mesh.cells.size() % arity != 0)
    throw ValidationError("cell index list length " + std::to_string(mesh.cells.size()) + " is not a multiple of " +
                          std::to_string(arity));
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    if (!is_finite(mesh.vertices[i])) throw ValidationError("vertex " + std::to_string(i) + " is not finite");
  }
  for (std::size_t i = 0; i < mesh.cells.size(); ++i) {
    if (mesh.cells[i] >= mesh.vertices.size())
      throw ValidationError("cell " + std::to_string(i / arity) + " references vertex " +
                            std::to_string(mesh.cells[i]) + " but only " + std::to_string(mesh.vertices.size()) +
                            " exist");
  }
  const double threshold = degenerate_measure_threshold(mesh);
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    if (!(std::abs(cell_measure(mesh, c)) > threshold))
      throw ValidationError("cell " + std::to_string(c) + " is degenerate (measure " +
                            fmt_real(cell_measure(mesh, c)) + ")");
  }
}

MeshFormat format_from_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".off" || ext == ".OFF") return MeshFormat::Off;
  if (ext == ".node" || ext == ".ele") return MeshFormat::NodeEle;
  if (ext == ".hexmesh" || ext == ".hex") return MeshFormat::HexAscii;
  throw ValidationError("cannot infer mesh format from '" + path.string() + "'");
}

VolumetricMesh load_mesh(const std::filesystem::path& path, MeshFormat format) {
  VolumetricMesh mesh;
  switch (format) {
    case MeshFormat::Off: mesh = load_off(path); break;
    case MeshFormat::NodeEle: mesh = load_node_ele(path); break;
    case MeshFormat::HexAscii: mesh = load_hex(path); break;
  }
  validate(mesh);
  return mesh;
}

void write_mesh(const VolumetricMesh& mesh, const std::filesystem::path& path, MeshFormat format) {
  const auto vertex_line = [](Point3 p) { return fmt_real(p.x) + ' ' + fmt_real(p.y) + ' ' + fmt_real(p.z); };
  const std::size_t nv = mesh.vertices.size();
  const std::size_t nc = mesh.cell_count();
  std::string out;
  switch (format) {
    case MeshFormat::Off: {
      if (mesh.kind != MeshKind::Tri2D) throw ValidationError("OFF holds triangle meshes only");
      out = fmt::format("OFF\n{} {} 0\n", nv, nc);
      for (const auto& p : mesh.vertices) out += vertex_line(p) + '\n';
      for (std::size_t c = 0; c < nc; ++c) {
        const auto cell = mesh.cell(c);
        out += fmt::format("3 {} {} {}\n", cell[0], cell[1], cell[2]);
      }
      write_text(path, out);
      return;
    }
    case MeshFormat::NodeEle: {
      if (mesh.kind != MeshKind::Tet) throw ValidationError(".node/.ele holds tetrahedral meshes only");
      const auto stem = node_ele_stem(path);
      out = fmt::format("{} 3 0 0\n", nv);
      for (std::size_t i = 0; i < nv; ++i) out += fmt::format("{} {}\n", i + 1, vertex_line(mesh.vertices[i]));
      write_text(with_suffix(stem, ".node"), out);
      out = fmt::format("{} 4 0\n", nc);
      for (std::size_t c = 0; c < nc; ++c) {
        const auto cell = mesh.cell(c);
        out += fmt::format("{} {} {} {} {}\n", c + 1, cell[0] + 1, cell[1] + 1, cell[2] + 1, cell[3] + 1);
      }
      write_text(with_suffix(stem, ".ele"), out);
      return;
    }
    case MeshFormat::HexAscii: {
      if (mesh.kind != MeshKind::Hex) throw ValidationError("HEX files hold hexahedral meshes only");
      out = fmt::format("HEX {} {}\n", nv, nc);
      for (const auto& p : mesh.vertices) out += vertex_line(p) + '\n';
      for (std::size_t c = 0; c < nc; ++c) out += fmt::format("{}\n", fmt::join(mesh.cell(c), " "));
      write_text(path, out);
      return;
    }
  }
}

MeshCenters compute_centers(const VolumetricMesh& mesh) {
  MeshCenters out;
  out.vertices.reserve(mesh.vertices.size());
  for (const auto& v : mesh.vertices) out.vertices.push_back({v, 1.0});

  PositionDedup edges(1e-9 * bounding_box(mesh.vertices).diagonal());
  PositionDedup faces(1e-9 * bounding_box(mesh.vertices).diagonal());
  const auto& edge_table = local_edges(mesh.kind);
  const auto& face_table = local_faces(mesh.kind);

  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    const auto cell = mesh.cell(c);
    for (const auto& e : edge_table) {
      const Point3 p = mean_of(mesh, pick(cell, e));
      if (edges.insert(p)) out.edges.push_back({p, -1.0});
    }
    const Point3 cell_center = mean_of(mesh, {cell.begin(), cell.end()});
    if (mesh.kind == MeshKind::Tri2D) {
      out.tiles.push_back({cell_center, -1.0});
      continue;
    }
    for (const auto& f : face_table) {
      const Point3 p = mean_of(mesh, pick(cell, f));
      if (faces.insert(p)) out.tiles.push_back({p, -1.0});
    }
    out.cells.push_back({cell_center, -1.0});
  }
  return out;
}

std::vector<CenterSegment> build_segments(const VolumetricMesh& mesh) {
  std::vector<CenterSegment> out;
  const bool planar = mesh.kind == MeshKind::Tri2D;
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    const auto cell = mesh.cell(c);
    const Point3 center = mean_of(mesh, {cell.begin(), cell.end()});
    if (planar) {
      for (const auto& e : local_edges(mesh.kind)) out.push_back({mean_of(mesh, pick(cell, e)), center, -1.0});
    } else {
      for (const auto& f : local_faces(mesh.kind)) out.push_back({mean_of(mesh, pick(cell, f)), center, -1.0});
    }
  }
  return out;
}

}  // namespace arbf
