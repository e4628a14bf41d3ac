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

#include "arbf/grid.hpp"

#include <fmt/format.h>
#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include "arbf/errors.hpp"
#include "text_reader.hpp"

namespace arbf {
namespace {

void check_box(Point3 lo, Point3 hi, int axes) {
  if (!is_finite(lo) || !is_finite(hi)) throw InvalidBBoxError("bounding box is not finite");
  for (int a = 0; a < axes; ++a) {
    if (!(hi[a] > lo[a]))
      throw InvalidBBoxError(fmt::format("bounding box is empty along axis {} ([{}, {}])", a, lo[a], hi[a]));
  }
}

VoxelGrid lattice(Point3 lo, Point3 hi, std::size_t resolution, double pad_fraction, int axes) {
  if (resolution < 2) throw InvalidBBoxError("resolution must be at least 2");
  if (!(pad_fraction >= 0.0) || !std::isfinite(pad_fraction)) throw InvalidBBoxError("padding must be >= 0");
  Point3 extent = hi - lo;
  if (axes == 2) extent.z = 0.0;
  const double pad = pad_fraction * norm(extent);

  VoxelGrid grid;
  double longest = 0.0;
  for (int a = 0; a < axes; ++a) longest = std::max(longest, extent[a] + 2.0 * pad);
  for (int a = 0; a < 3; ++a) {
    if (a >= axes) {
      grid.origin[a] = lo[a];
      grid.dims[a] = 1;
      grid.spacing[a] = 1.0;
      continue;
    }
    const double len = extent[a] + 2.0 * pad;
    const auto n = static_cast<std::size_t>(
        std::max<long long>(2, std::llround(static_cast<double>(resolution) * len / longest)));
    grid.origin[a] = lo[a] - pad;
    grid.dims[a] = n;
    grid.spacing[a] = len / static_cast<double>(n - 1);
  }
  grid.values.assign(grid.voxel_count(), 0.0F);
  return grid;
}

// Rows are (j, k) pairs; every voxel is written exactly once by one thread.
template <class Field>
void fill_rows(VoxelGrid& grid, const Field& field, int workers) {
  const long long rows = static_cast<long long>(grid.ny() * grid.nz());
  const std::size_t nx = grid.nx();
#pragma omp parallel for schedule(dynamic, 4) num_threads(workers)
  for (long long row = 0; row < rows; ++row) {
    const std::size_t j = static_cast<std::size_t>(row) % grid.ny();
    const std::size_t k = static_cast<std::size_t>(row) / grid.ny();
    float* out = grid.values.data() + grid.index(0, j, k);
    for (std::size_t i = 0; i < nx; ++i) out[i] = static_cast<float>(field(grid.position(i, j, k)));
  }
}

std::filesystem::path with_suffix(const std::filesystem::path& stem, const char* suffix) {
  return std::filesystem::path(stem.string() + suffix);
}

}  // namespace

VoxelGrid make_grid(Point3 bbox_min, Point3 bbox_max, std::size_t resolution, double pad_fraction) {
  check_box(bbox_min, bbox_max, 3);
  return lattice(bbox_min, bbox_max, resolution, pad_fraction, 3);
}

VoxelGrid make_grid_2d(Point3 bbox_min, Point3 bbox_max, std::size_t resolution, double pad_fraction) {
  check_box(bbox_min, bbox_max, 2);
  return lattice(bbox_min, bbox_max, resolution, pad_fraction, 2);
}

double eval_field(const FieldSource& source, Point3 p) {
  if (const auto* model = std::get_if<std::reference_wrapper<const InterpolationModel>>(&source))
    return evaluate(model->get(), p);
  return eval_tpms(std::get<TpmsKind>(source), p);
}

int workers_from_env() {
  const char* raw = std::getenv("ARBF_WORKERS");
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v < 0) return 0;
  return static_cast<int>(std::min<long>(v, 1024));
}

VoxelGrid sample_field(const FieldSource& source, VoxelGrid grid, int workers) {
  if (grid.values.size() != grid.voxel_count()) grid.values.assign(grid.voxel_count(), 0.0F);
  const int threads = workers > 0 ? workers : omp_get_max_threads();
  if (const auto* model = std::get_if<std::reference_wrapper<const InterpolationModel>>(&source)) {
    const InterpolationModel& m = model->get();
    fill_rows(grid, [&m](Point3 p) { return evaluate(m, p); }, threads);
  } else {
    const TpmsKind kind = std::get<TpmsKind>(source);
    fill_rows(grid, [kind](Point3 p) { return eval_tpms(kind, p); }, threads);
  }
  return grid;
}

VoxelGrid sample_field_serial(const FieldSource& source, VoxelGrid grid) {
  grid.values.assign(grid.voxel_count(), 0.0F);
  for (std::size_t k = 0; k < grid.nz(); ++k)
    for (std::size_t j = 0; j < grid.ny(); ++j)
      for (std::size_t i = 0; i < grid.nx(); ++i)
        grid.values[grid.index(i, j, k)] = static_cast<float>(eval_field(source, grid.position(i, j, k)));
  return grid;
}

double solid_fraction(const VoxelGrid& grid, double iso) {
  if (grid.values.empty()) return 0.0;
  const auto solid = std::count_if(grid.values.begin(), grid.values.end(),
                                   [iso](float v) { return static_cast<double>(v) >= iso; });
  return static_cast<double>(solid) / static_cast<double>(grid.values.size());
}

ValueRange value_range(const VoxelGrid& grid) {
  if (grid.values.empty()) return {};
  const auto [lo, hi] = std::minmax_element(grid.values.begin(), grid.values.end());
  return {*lo, *hi};
}

void write_volume(const VoxelGrid& grid, const std::filesystem::path& stem) {
  if (stem.empty()) throw IoError("empty output path");
  if (grid.values.size() != grid.voxel_count()) throw HeaderMismatchError("value count does not match dims");

  const auto g = [](double v) { return fmt::format("{:.17g}", v); };
  std::ofstream hdr(with_suffix(stem, ".vhdr"), std::ios::binary);
  if (!hdr) throw IoError("cannot open '" + stem.string() + ".vhdr' for writing");
  hdr << fmt::format("DIMS {} {} {}\n", grid.nx(), grid.ny(), grid.nz())
      << fmt::format("ORIGIN {} {} {}\n", g(grid.origin.x), g(grid.origin.y), g(grid.origin.z))
      << fmt::format("SPACING {} {} {}\n", g(grid.spacing[0]), g(grid.spacing[1]), g(grid.spacing[2]))
      << "DTYPE float32le\n";
  if (!hdr) throw IoError("write failed for '" + stem.string() + ".vhdr'");

  std::ofstream raw(with_suffix(stem, ".raw"), std::ios::binary);
  if (!raw) throw IoError("cannot open '" + stem.string() + ".raw' for writing");
  if constexpr (std::endian::native == std::endian::little) {
    raw.write(reinterpret_cast<const char*>(grid.values.data()),
              static_cast<std::streamsize>(grid.values.size() * sizeof(float)));
  } else {
    for (float v : grid.values) {
      auto bits = std::bit_cast<std::uint32_t>(v);
      char bytes[4];
      for (int b = 0; b < 4; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xFFU);
      raw.write(bytes, 4);
    }
  }
  if (!raw) throw IoError("write failed for '" + stem.string() + ".raw'");
}

VoxelGrid read_volume(const std::filesystem::path& stem) {
  if (stem.empty()) throw IoError("empty input path");
  TextReader hdr(with_suffix(stem, ".vhdr"));
  VoxelGrid grid;
  bool seen[4] = {false, false, false, false};
  while (!hdr.at_end()) {
    auto tok = hdr.next_line();
    if (tok[0] == "DIMS" && tok.size() == 4) {
      for (int a = 0; a < 3; ++a) grid.dims[a] = hdr.to_size(tok[a + 1]);
      seen[0] = true;
    } else if (tok[0] == "ORIGIN" && tok.size() == 4) {
      for (int a = 0; a < 3; ++a) grid.origin[a] = hdr.to_real(tok[a + 1]);
      seen[1] = true;
    } else if (tok[0] == "SPACING" && tok.size() == 4) {
      for (int a = 0; a < 3; ++a) {
        grid.spacing[a] = hdr.to_real(tok[a + 1]);
        if (!(grid.spacing[a] > 0.0)) throw ParseError(hdr.name() + ": spacing must be positive", hdr.line_number());
      }
      seen[2] = true;
    } else if (tok[0] == "DTYPE" && tok.size() == 2) {
      if (tok[1] != "float32le") throw ParseError(hdr.name() + ": unsupported DTYPE " + tok[1], hdr.line_number());
      seen[3] = true;
    } else {
      throw ParseError(hdr.name() + ": unknown header record '" + tok[0] + "'", hdr.line_number());
    }
  }
  if (!(seen[0] && seen[1] && seen[2] && seen[3]))
    throw ParseError(hdr.name() + ": header needs DIMS, ORIGIN, SPACING and DTYPE");
  if (grid.voxel_count() == 0) throw ParseError(hdr.name() + ": DIMS must be positive");

  const auto raw_path = with_suffix(stem, ".raw");
  std::ifstream raw(raw_path, std::ios::binary | std::ios::ate);
  if (!raw) throw IoError("cannot open '" + raw_path.string() + "'");
  const auto bytes = static_cast<std::size_t>(raw.tellg());
  if (bytes != grid.voxel_count() * 4)
    throw HeaderMismatchError(fmt::format("'{}' holds {} bytes but the header declares {} voxels ({} bytes)",
                                          raw_path.string(), bytes, grid.voxel_count(), grid.voxel_count() * 4));
  raw.seekg(0);
  std::vector<char> buffer(bytes);
  raw.read(buffer.data(), static_cast<std::streamsize>(bytes));
  if (!raw) throw IoError("read failed for '" + raw_path.string() + "'");

  grid.values.resize(grid.voxel_count());
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    std::uint32_t bits = 0;
    for (int b = 0; b < 4; ++b)
      bits |= static_cast<std::uint32_t>(static_cast<unsigned char>(buffer[4 * i + b])) << (8 * b);
    grid.values[i] = std::bit_cast<float>(bits);
  }
  for (float v : grid.values)
    if (!std::isfinite(v)) throw ParseError("'" + raw_path.string() + "' contains non-finite values");
  return grid;
}

}  // namespace arbf
