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

#include <cstdint>
#include <utility>

#include "arbf/mesh.hpp"

namespace arbf {

/// SplitMix64 (Steele, Lea, Flood). Fixed so perturbations reproduce across
/// platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound);

  /// Standard normal pair by Box-Muller.
  std::pair<double, double> next_gaussian_pair();

 private:
  std::uint64_t state_;
};

struct PerturbSpec {
  double magnitude = 0.15;       // fraction of the shortest incident edge, in [0, 0.3]
  std::uint64_t seed = 0;
  double vertex_fraction = 0.5;  // in [0, 1]
};

inline constexpr double kMaxPerturbMagnitude = 0.3;

/// Moves ceil(vertex_fraction * nv) distinct, uniformly chosen vertices by
/// magnitude * (shortest incident edge) along a random unit direction (z = 0
/// for Tri2D). Connectivity is untouched. Throws ValidationError for an
/// out-of-range spec and DegenerateResultError when a cell collapses or
/// inverts.
VolumetricMesh perturb_mesh(const VolumetricMesh& mesh, const PerturbSpec& spec);

}  // namespace arbf
