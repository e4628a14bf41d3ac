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
#include <limits>

#include "arbf/errors.hpp"
#include "arbf/perturb.hpp"
#include "fixtures.hpp"

using namespace arbf;

TEST_CASE("SplitMix64 reference outputs") {
  // First outputs for seed 0 from the published reference implementation.
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xe220a8397b1dcdafULL);
  CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(rng.next() == 0x06c45d188009454fULL);
}

TEST_CASE("SplitMix64 helpers") {
  SplitMix64 rng(42);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(rng.next_below(7) < 7);
  }
  CHECK(rng.next_below(1) == 0);
  double sum = 0.0, sum_sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const auto [a, b] = rng.next_gaussian_pair();
    sum += a + b;
    sum_sq += a * a + b * b;
  }
  CHECK(std::abs(sum / (2 * n)) < 0.03);
  CHECK(std::abs(sum_sq / (2 * n) - 1.0) < 0.03);
}

TEST_CASE("zero magnitude leaves the mesh untouched") {
  const auto mesh = testing::hex_block(2, 2, 2);
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    const auto out = perturb_mesh(mesh, {0.0, seed, 1.0});
    CHECK(out.vertices == mesh.vertices);
    CHECK(out.cells == mesh.cells);
  }
}

TEST_CASE("same spec, same output") {
  const auto mesh = testing::icosahedron20();
  const PerturbSpec spec{0.2, 1234, 0.5};
  const auto a = perturb_mesh(mesh, spec);
  const auto b = perturb_mesh(mesh, spec);
  CHECK(a.vertices == b.vertices);
  CHECK(a.vertices != mesh.vertices);
  CHECK(perturb_mesh(mesh, {0.2, 1235, 0.5}).vertices != a.vertices);
}

TEST_CASE("displacements are bounded and the right count of vertices moves") {
  const auto mesh = testing::hex_block(2, 2, 2);
  const auto edges = mesh_edges(mesh);
  std::vector<double> shortest(mesh.vertices.size(), std::numeric_limits<double>::infinity());
  for (const auto& e : edges) {
    const double len = norm(mesh.vertices[e[0]] - mesh.vertices[e[1]]);
    shortest[e[0]] = std::min(shortest[e[0]], len);
    shortest[e[1]] = std::min(shortest[e[1]], len);
  }
  for (double fraction : {0.0, 0.25, 0.5, 1.0}) {
    const PerturbSpec spec{0.15, 7, fraction};
    const auto out = perturb_mesh(mesh, spec);
    CHECK(out.cells == mesh.cells);
    std::size_t moved = 0;
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
      const double d = norm(out.vertices[v] - mesh.vertices[v]);
      CHECK(d <= spec.magnitude * shortest[v] * (1.0 + 1e-12));
      if (d > 0.0) {
        ++moved;
        CHECK(d == doctest::Approx(spec.magnitude * shortest[v]).epsilon(1e-12));
      }
    }
    CHECK(moved == static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(mesh.vertices.size()))));
    CHECK_NOTHROW(validate(out));
  }
}

TEST_CASE("unit cube, every vertex, magnitude 0.1") {
  const auto mesh = testing::unit_hex();
  const auto out = perturb_mesh(mesh, {0.1, 42, 1.0});
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) CHECK(norm(out.vertices[v] - mesh.vertices[v]) <= 0.1 + 1e-15);
  CHECK(std::abs(cell_measure(out, 0)) > degenerate_measure_threshold(out));
}

TEST_CASE("planar meshes stay planar") {
  const auto out = perturb_mesh(testing::single_triangle(), {0.3, 5, 1.0});
  for (const auto& v : out.vertices) CHECK(v.z == 0.0);
}

TEST_CASE("spec validation") {
  const auto mesh = testing::unit_tet();
  CHECK_THROWS_AS(perturb_mesh(mesh, {0.31, 0, 0.5}), ValidationError);
  CHECK_THROWS_AS(perturb_mesh(mesh, {-0.1, 0, 0.5}), ValidationError);
  CHECK_THROWS_AS(perturb_mesh(mesh, {0.1, 0, 1.5}), ValidationError);
}

TEST_CASE("a sliver that inverts is reported") {
  // Apex 0.05 above a unit base triangle; its shortest edge is ~0.42, so a
  // 0.3 step can push it through the base.
  const VolumetricMesh sliver{MeshKind::Tet, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0.3, 0.3, 0.05}}, {0, 1, 2, 3}};
  int failures = 0;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    try {
      perturb_mesh(sliver, {0.3, seed, 0.25});
    } catch (const DegenerateResultError&) {
      ++failures;
    }
  }
  CHECK(failures > 0);
  CHECK(failures < 64);
}
