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

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>

#include "arbf/errors.hpp"
#include "arbf/isosurface.hpp"
#include "fixtures.hpp"

using namespace arbf;

namespace {

constexpr double kRadius = 0.7;

// |x| - R sampled on [-1, 1]^3.
VoxelGrid sphere_grid(std::size_t n) {
  VoxelGrid g = make_grid({-1, -1, -1}, {1, 1, 1}, n, 0.0);
  for (std::size_t k = 0; k < g.nz(); ++k)
    for (std::size_t j = 0; j < g.ny(); ++j)
      for (std::size_t i = 0; i < g.nx(); ++i)
        g.values[g.index(i, j, k)] = static_cast<float>(norm(g.position(i, j, k)) - kRadius);
  return g;
}

VoxelGrid circle_grid(std::size_t n) {
  VoxelGrid g = make_grid_2d({-1, -1, 0}, {1, 1, 0}, n, 0.0);
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i)
      g.values[g.index(i, j, 0)] = static_cast<float>(norm(g.position(i, j, 0)) - kRadius);
  return g;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("no crossing, no triangles") {
  VoxelGrid g = make_grid({0, 0, 0}, {1, 1, 1}, 5, 0.0);
  std::fill(g.values.begin(), g.values.end(), -1.0F);
  CHECK(marching_cubes(g, 0.0).empty());
  CHECK(marching_cubes(g, -2.0).empty());
}

TEST_CASE("one corner above iso gives one triangle") {
  for (std::size_t corner = 0; corner < 8; ++corner) {
    VoxelGrid g = make_grid({0, 0, 0}, {1, 1, 1}, 2, 0.0);
    std::fill(g.values.begin(), g.values.end(), -1.0F);
    g.values[corner] = 1.0F;
    const auto soup = marching_cubes(g, 0.0);
    CHECK(soup.triangles.size() == 1);
    CHECK(soup.vertices.size() == 3);
    CHECK(surface_area(soup) == doctest::Approx(std::sqrt(3.0) / 8.0).epsilon(1e-12));
  }
}

TEST_CASE("sphere surface") {
  const auto g = sphere_grid(64);
  const auto soup = marching_cubes(g, 0.0);
  const double exact = 4.0 * std::numbers::pi * kRadius * kRadius;
  CHECK(std::abs(surface_area(soup) - exact) / exact < 0.03);
  CHECK(euler_characteristic(soup) == 2);

  // Every vertex sits on a lattice edge and interpolates to the iso-value.
  for (const auto& p : soup.vertices) {
    int off_lattice = -1;
    int off_count = 0;
    std::array<double, 3> u{};
    for (int a = 0; a < 3; ++a) {
      u[static_cast<std::size_t>(a)] = (p[a] - g.origin[a]) / g.spacing[static_cast<std::size_t>(a)];
      if (std::abs(u[static_cast<std::size_t>(a)] - std::round(u[static_cast<std::size_t>(a)])) > 1e-9) {
        off_lattice = a;
        ++off_count;
      }
    }
    REQUIRE(off_count <= 1);
    if (off_lattice < 0) continue;  // crossing exactly on a sample
    std::array<std::size_t, 3> lo{};
    for (int a = 0; a < 3; ++a)
      lo[static_cast<std::size_t>(a)] = static_cast<std::size_t>(
          a == off_lattice ? std::floor(u[static_cast<std::size_t>(a)]) : std::round(u[static_cast<std::size_t>(a)]));
    std::array<std::size_t, 3> hi = lo;
    hi[static_cast<std::size_t>(off_lattice)] += 1;
    const double t = u[static_cast<std::size_t>(off_lattice)] - static_cast<double>(lo[static_cast<std::size_t>(off_lattice)]);
    const double v0 = g.at(lo[0], lo[1], lo[2]);
    const double v1 = g.at(hi[0], hi[1], hi[2]);
    CHECK(std::abs(v0 + t * (v1 - v0)) <= 1e-9);
  }
}

TEST_CASE("extraction is independent of the worker count") {
  const auto g = sphere_grid(40);
  const auto one = marching_cubes(g, 0.05, 1);
  for (int workers : {2, 4, 7}) {
    const auto many = marching_cubes(g, 0.05, workers);
    CHECK(many.vertices == one.vertices);
    CHECK(many.triangles == one.triangles);
  }
  // The welded mesh covers the same surface as the raw reference soup.
  const auto raw = marching_cubes_raw(g, 0.05);
  CHECK(surface_area(one) == doctest::Approx(surface_area(raw)).epsilon(1e-9));
  CHECK(one.vertices.size() < raw.vertices.size());
}

TEST_CASE("welding") {
  TriangleSoup soup;
  soup.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {2, 0, 0}, {2, 0, 0}};
  soup.triangles = {{0, 1, 2}, {3, 4, 5}, {1, 6, 7}};
  const auto w = weld(soup, 1e-9);
  CHECK(w.vertices.size() == 4);
  CHECK(w.triangles.size() == 2);
  CHECK(euler_characteristic(w) == 1);
}

TEST_CASE("marching squares") {
  SUBCASE("uniform field") {
    VoxelGrid g = make_grid_2d({0, 0, 0}, {1, 1, 0}, 8, 0.0);
    std::fill(g.values.begin(), g.values.end(), 0.5F);
    CHECK(marching_squares(g, 0.0).polylines.empty());
  }
  SUBCASE("one corner above") {
    VoxelGrid g = make_grid_2d({0, 0, 0}, {1, 1, 0}, 2, 0.0);
    g.values = {1.0F, -1.0F, -1.0F, -1.0F};
    const auto c = marching_squares(g, 0.0);
    REQUIRE(c.polylines.size() == 1);
    REQUIRE(c.polylines[0].size() == 2);
    CHECK(total_length(c) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  }
  SUBCASE("saddle resolved by the cell average") {
    VoxelGrid g = make_grid_2d({0, 0, 0}, {1, 1, 0}, 2, 0.0);
    g.values = {1.0F, -1.0F, -1.0F, 1.0F};  // (0,0) and (1,1) above
    const auto joined = marching_squares(g, 0.0);
    CHECK(joined.polylines.size() == 2);
    // Average above: the diagonal above-region stays connected, so each cut
    // isolates a below corner; both cuts then pass near (1,0) and (0,1).
    for (const auto& line : joined.polylines) {
      const Point3 mid = 0.5 * (line.front() + line.back());
      CHECK(std::abs(mid.x - mid.y) == doctest::Approx(0.5));
    }
    g.values = {1.0F, -1.5F, -1.5F, 1.0F};
    const auto split = marching_squares(g, 0.0);
    REQUIRE(split.polylines.size() == 2);
    for (const auto& line : split.polylines) {
      const Point3 mid = 0.5 * (line.front() + line.back());
      CHECK(std::abs(mid.x - mid.y) < 1e-12);
    }
  }
  SUBCASE("circle length") {
    const auto c = marching_squares(circle_grid(256), 0.0);
    const double exact = 2.0 * std::numbers::pi * kRadius;
    CHECK(std::abs(total_length(c) - exact) / exact < 0.03);
    CHECK(c.polylines.size() == 1);
    for (const auto& line : c.polylines) CHECK(line.size() >= 2);
  }
  SUBCASE("3D grids are rejected") { CHECK_THROWS_AS(marching_squares(sphere_grid(4), 0.0), ValidationError); }
}

TEST_CASE("OBJ export") {
  const auto dir = testing::scratch_dir("obj");
  SUBCASE("empty") {
    export_obj(TriangleSoup{}, dir / "empty.obj");
    CHECK(slurp(dir / "empty.obj").empty());
  }
  SUBCASE("single triangle") {
    TriangleSoup soup{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}}};
    export_obj(soup, dir / "tri.obj");
    CHECK(slurp(dir / "tri.obj") == "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n");
  }
  SUBCASE("sphere round-trip") {
    const auto soup = marching_cubes(sphere_grid(24), 0.0);
    export_obj(soup, dir / "sphere.obj");
    const auto back = read_obj(dir / "sphere.obj");
    REQUIRE(back.vertices.size() == soup.vertices.size());
    CHECK(back.triangles == soup.triangles);
    for (std::size_t i = 0; i < soup.vertices.size(); ++i)
      CHECK(norm(back.vertices[i] - soup.vertices[i]) <= 1e-6);
  }
  SUBCASE("unwritable path") {
    CHECK_THROWS_AS(export_obj(TriangleSoup{}, dir / "no_dir" / "x.obj"), IoError);
    CHECK_THROWS_AS(export_obj(TriangleSoup{}, ""), IoError);
  }
}

TEST_CASE("PGM export") {
  const auto dir = testing::scratch_dir("pgm");
  VoxelGrid g = make_grid_2d({0, 0, 0}, {1, 1, 0}, 3, 0.0);
  const auto pixels = [&](float value) {
    std::fill(g.values.begin(), g.values.end(), value);
    export_pgm(g, dir / "img.pgm", -1.0, 1.0);
    const std::string text = slurp(dir / "img.pgm");
    const std::string header = "P5\n3 3\n255\n";
    REQUIRE(text.substr(0, header.size()) == header);
    return text.substr(header.size());
  };
  CHECK(pixels(-1.0F) == std::string(9, '\0'));
  CHECK(pixels(-5.0F) == std::string(9, '\0'));
  CHECK(pixels(1.0F) == std::string(9, static_cast<char>(255)));
  CHECK(pixels(0.0F) == std::string(9, static_cast<char>(128)));

  // Row 0 of the image is the top (largest y).
  g.values = {0, 0, 0, 0, 0, 0, 1, 1, 1};
  export_pgm(g, dir / "rows.pgm", 0.0, 1.0);
  const std::string text = slurp(dir / "rows.pgm");
  CHECK(text.substr(text.size() - 9) == std::string(3, static_cast<char>(255)) + std::string(6, '\0'));
  CHECK_THROWS_AS(export_pgm(g, dir / "bad.pgm", 1.0, 1.0), ValidationError);
}
