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

#include <string>
#include <vector>

#include "knotcover/knot.hpp"
#include "knotcover/presentation.hpp"
#include "knotcover/vec.hpp"

namespace knotcover {

/// Projection of 3-space onto a plane with a notion of depth. The strand with
/// the smaller depth at a crossing is the over-strand.
class Projection {
 public:
  /// Parallel projection looking along `view_direction`.
  static Projection orthographic(Vec3 view_direction);
  /// Central projection from `eye` towards `target`. With `near_is_over`
  /// false the strand farther from the eye passes over (the diagram as seen
  /// from behind the knot).
  static Projection central(Vec3 eye, Vec3 target, bool near_is_over = true);

  Vec2 project(Vec3 p) const;
  double depth(Vec3 p) const;
  /// Parameter along the 3D segment [a, b] of the point projecting to
  /// parameter `s` along the projected segment.
  double lift_parameter(Vec3 a, Vec3 b, double s) const;
  bool is_central() const { return central_; }
  bool near_is_over() const { return near_is_over_; }

 private:
  bool central_ = false;
  bool near_is_over_ = true;
  Vec3 eye_;
  Vec3 u_, v_, w_;  // image basis and viewing axis, u x v = -w
};

struct Crossing {
  Vec2 position;
  int over_arc = -1;
  int under_in_arc = -1;
  int under_out_arc = -1;
  /// +1 for right-handed crossings.
  int sign = 0;
  /// Curve parameters (segment index + fraction) of the two strands.
  double over_param = 0;
  double under_param = 0;
};

/// Maximal piece of the curve between consecutive undercrossings, as the
/// half-open parameter interval [begin, end); wraps when end <= begin.
struct Arc {
  int index = 0;
  double begin = 0;
  double end = 0;
};

struct Diagram {
  std::vector<Vec2> polyline;
  std::vector<Crossing> crossings;
  std::vector<Arc> arcs;
  size_t curve_size = 0;

  /// Arc containing curve parameter `s`.
  int arc_at(double s) const;
};

/// Projects the curve and finds every crossing with over/under resolved by
/// depth. Throws GenericityError for tangencies, crossings within 1e-6 of a
/// vertex, near-equal depths or coincident crossings. Arc 0 contains curve
/// parameter 0; later arcs follow the curve orientation.
Diagram project_and_cross(const KnotCurve& curve, const Projection& projection);

/// One generator per arc and one relator per crossing: at a positive
/// crossing out = over * in * over^-1, at a negative one
/// out = over^-1 * in * over.
Presentation wirtinger(const Diagram& diagram,
                       const std::vector<std::string>& names = {});

/// a, b, c, d, f, g, ... (skipping e, which names the identity).
std::vector<std::string> default_generator_names(size_t count);

}  // namespace knotcover
