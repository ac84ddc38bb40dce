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
#include "knotcover/knot.hpp"
#include "knotcover/vec.hpp"

namespace knotcover {

inline constexpr int kSceneVersion = 1;

struct KnotSource {
  enum class Kind { kNone, kBuiltin, kParametric, kPoints };
  Kind kind = Kind::kNone;
  std::string name;          // kBuiltin
  ParametricKnot terms;      // kParametric
  std::vector<Vec3> points;  // kPoints (Catmull-Rom control points)
  int samples = 256;

  bool operator==(const KnotSource&) const = default;
};

struct GroupSource {
  /// kWirtinger derives the presentation from the knot as seen from the apex.
  enum class Kind { kWirtinger, kPresentation, kTable };
  Kind kind = Kind::kWirtinger;
  std::vector<std::string> generators;
  std::vector<std::string> relators;  // plain word syntax
  std::vector<std::vector<std::string>> rows;  // kTable, row = left factor
  int order = 2;  // branching order

  bool operator==(const GroupSource&) const = default;
};

struct WorldSpec {
  std::string name;  // group element name
  Rgb color;
  bool operator==(const WorldSpec&) const = default;
};

struct SceneSpec {
  int version = kSceneVersion;
  std::string name;
  double scale = 1;
  KnotSource knot;
  std::optional<Vec3> apex;
  GroupSource group;
  std::vector<std::string> gen_to_cone;
  std::vector<WorldSpec> worlds;
  double tube_radius = 0.05;  // relative to the curve diameter

  bool group_only() const { return knot.kind == KnotSource::Kind::kNone; }
  bool operator==(const SceneSpec&) const = default;
};

/// Parses and validates a JSON scene. Syntax errors report line and column;
/// cross-reference errors name the offending field.
SceneSpec parse_scene(std::string_view text);
std::string serialize_scene(const SceneSpec& spec);

/// Reads a scene file, or a builtin scene when `path_or_name` names one.
SceneSpec load_scene(const std::string& path_or_name);

/// Terms of a builtin parametric knot; throws SceneError for unknown names.
ParametricKnot builtin_knot(std::string_view name);
std::vector<std::string> builtin_knot_names();

/// unknot, twisted-unknot, trefoil, figure-eight, solomon, hopf.
std::vector<SceneSpec> builtin_scenes();
SceneSpec builtin_scene(std::string_view name);

/// Checks what can be checked without building geometry or enumerating.
void validate_scene(const SceneSpec& spec);

/// Curve of a scene's knot, scaled.
KnotCurve scene_curve(const SceneSpec& spec);

}  // namespace knotcover
