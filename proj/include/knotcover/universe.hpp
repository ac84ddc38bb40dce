// Copyright 2026 The knotcover Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "knotcover/color.hpp"
#include "knotcover/cone.hpp"
#include "knotcover/diagram.hpp"
#include "knotcover/group.hpp"
#include "knotcover/knot.hpp"
#include "knotcover/presentation.hpp"
#include "knotcover/scene.hpp"

namespace knotcover {

/// Everything derived from a scene: curve, group, labeled cut surface and
/// world colors.
struct Universe {
  SceneSpec spec;
  GroupTable group;
  std::optional<Presentation> presentation;  // before branching relators
  std::vector<Rgb> colors;                   // by group element
  std::optional<KnotCurve> curve;
  std::optional<Diagram> apex_diagram;
  std::optional<PortalSurface> surface;
  /// Double lines whose labels are inconsistent with the group.
  std::vector<std::string> labeling_violations;

  bool has_geometry() const { return surface.has_value(); }
  double diameter() const { return surface ? surface->scale : 0; }
  /// Element of the world called `name`; throws SceneError if unknown.
  int world(std::string_view name) const;
  const std::string& world_name(int element) const { return group.names.at(element); }
};

/// Throws SceneError for scenes whose group, worlds or generator map do not
/// fit, GeometryError when the knot has no usable geometry.
Universe build_universe(const SceneSpec& spec);

}  // namespace knotcover
