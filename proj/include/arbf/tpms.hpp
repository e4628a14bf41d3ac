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

#include <string_view>

#include "arbf/geometry.hpp"

namespace arbf {

enum class TpmsType { P, D, G, IWP };

struct TpmsKind {
  TpmsType type = TpmsType::P;
  // Angular frequency multipliers per axis.
  double px = 1.0;
  double py = 1.0;
  double pz = 1.0;
};

std::string_view to_string(TpmsType type);
/// Accepts p, d, g, iwp (case-insensitive). Throws ValidationError.
TpmsType parse_tpms_type(std::string_view name);

/// With X = px x, Y = py y, Z = pz z:
///   P    cos X + cos Y + cos Z
///   D    sX sY sZ + sX cY cZ + cX sY cZ + cX cY sZ
///   G    sin X cos Y + sin Y cos Z + sin Z cos X
///   IWP  2 (cX cY + cY cZ + cZ cX) - (cos 2X + cos 2Y + cos 2Z)
double eval_tpms(const TpmsKind& kind, Point3 p);

}  // namespace arbf
