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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "knotcover/vec.hpp"

namespace knotcover {

/// One trigonometric term `amplitude * sin(frequency * t + phase)`. Cosines
/// are written with phase pi/2.
struct TrigTerm {
  double amplitude = 0;
  double frequency = 0;
  double phase = 0;

  bool operator==(const TrigTerm&) const = default;
};

/// A closed parametric curve t in [0, 2pi), one list of terms per coordinate.
struct ParametricKnot {
  std::array<std::vector<TrigTerm>, 3> terms;

  Vec3 evaluate(double t) const;
  bool operator==(const ParametricKnot&) const = default;
};

enum class CurveSource { kParametric, kControlPoints };

/// Closed polyline; the last point connects back to the first.
struct KnotCurve {
  std::vector<Vec3> points;
  CurveSource source = CurveSource::kParametric;

  size_t size() const { return points.size(); }
  Vec3 point(size_t i) const { return points[i % points.size()]; }
  /// Point at curve parameter `s` in [0, size()): segment floor(s), fraction.
  Vec3 at(double s) const;
  /// Unit tangent of segment i.
  Vec3 segment_direction(size_t i) const;
  double diameter() const;
  Vec3 center() const;
  double length() const;
};

/// Minimum distance between non-adjacent segments.
double min_nonadjacent_distance(const KnotCurve& curve);

/// Smallest distance between two far-apart parts of the curve: minimum of
/// segment-pair distances that are local minima in both indices. Without
/// such a pair, the minimum over pairs a quarter of the curve apart.
double min_self_distance(const KnotCurve& curve);

/// Throws GeometryError if the polyline has coincident consecutive points or
/// non-adjacent segments closer than 1e-6 x diameter.
void check_simple(const KnotCurve& curve);

KnotCurve sample_parametric(const ParametricKnot& knot, int n);

/// Closed centripetal Catmull-Rom spline through `control`.
KnotCurve catmull_rom(std::span<const Vec3> control, int samples_per_span);

struct TubeMesh {
  std::vector<Vec3> vertices;
  std::vector<Vec3> normals;
  std::vector<std::array<uint32_t, 3>> triangles;
  double radius = 0;
};

/// Tube around `curve`; ring i is centred on curve point i.
TubeMesh tube_mesh(const KnotCurve& curve, double radius, int ring_segments);

}  // namespace knotcover
