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

#include "arbf/tpms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "arbf/errors.hpp"

namespace arbf {

std::string_view to_string(TpmsType type) {
  switch (type) {
    case TpmsType::P: return "p";
    case TpmsType::D: return "d";
    case TpmsType::G: return "g";
    case TpmsType::IWP: return "iwp";
  }
  return "?";
}

TpmsType parse_tpms_type(std::string_view name) {
  std::string n(name);
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (n == "p") return TpmsType::P;
  if (n == "d") return TpmsType::D;
  if (n == "g") return TpmsType::G;
  if (n == "iwp") return TpmsType::IWP;
  throw ValidationError("unknown TPMS kind '" + std::string(name) + "' (expected p, d, g or iwp)");
}

double eval_tpms(const TpmsKind& kind, Point3 p) {
  const double X = kind.px * p.x;
  const double Y = kind.py * p.y;
  const double Z = kind.pz * p.z;
  const double cx = std::cos(X), cy = std::cos(Y), cz = std::cos(Z);
  switch (kind.type) {
    case TpmsType::P: return cx + cy + cz;
    case TpmsType::D: {
      const double sx = std::sin(X), sy = std::sin(Y), sz = std::sin(Z);
      return sx * sy * sz + sx * cy * cz + cx * sy * cz + cx * cy * sz;
    }
    case TpmsType::G: return std::sin(X) * cy + std::sin(Y) * cz + std::sin(Z) * cx;
    case TpmsType::IWP:
      return 2.0 * (cx * cy + cy * cz + cz * cx) - (std::cos(2.0 * X) + std::cos(2.0 * Y) + std::cos(2.0 * Z));
  }
  return 0.0;
}

}  // namespace arbf
