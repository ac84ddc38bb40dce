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
#include <optional>
#include <string>
#include <vector>

#include "knotcover/group.hpp"
#include "knotcover/knot.hpp"
#include "knotcover/vec.hpp"

namespace knotcover {

using Triangle = std::array<Vec3, 3>;

/// Fan of triangles (apex, rim[i], rim[i+1]) over the closed knot polyline.
/// The front side of triangle i is the side its normal
/// (rim[i]-apex) x (rim[i+1]-apex) points to.
struct Cone {
  Vec3 apex;
  std::vector<Vec3> rim;

  size_t triangle_count() const { return rim.size(); }
  Triangle triangle(size_t i) const { return {apex, rim[i], rim[(i + 1) % rim.size()]}; }
  Vec3 normal(size_t i) const;
  /// Point of the rim edge of triangle i at parameter u.
  Vec3 rim_point(size_t i, double u) const;
};

/// Line along which two sheets of the cone meet: the ray from the apex to
/// the near rim point. The near sheet is cut there; the far sheet only gets
/// a slit of relative length `extent`.
struct DoubleLine {
  int near_triangle = 0;
  double near_u = 0;
  int far_triangle = 0;
  double far_u = 0;
  double extent = 0;
  /// Handedness of the crossing seen from the apex.
  int sign = 0;
  int before_piece = -1;
  int after_piece = -1;
  int far_piece = -1;
};

/// Sub-triangle of a fan triangle between two rays from the apex.
struct Wedge {
  int triangle = 0;
  double u0 = 0;
  double u1 = 1;
  /// Slit lengths (relative to the ray) on the u0 / u1 sides, 0 if none.
  double slit0 = 0;
  double slit1 = 0;
  int piece = -1;
};

struct ConePieces {
  std::vector<DoubleLine> double_lines;
  std::vector<Wedge> wedges;
  std::vector<std::vector<int>> wedges_of_triangle;
  int piece_count = 0;
  std::vector<double> piece_area;

  /// Piece containing the point of triangle `triangle` whose ray from the
  /// apex meets the rim edge at parameter u.
  int piece_at(int triangle, double u) const;
  std::vector<Triangle> piece_mesh(const Cone& cone, int piece) const;
};

struct ConeSegment {
  int id = 0;
  std::vector<Triangle> mesh;
  std::string generator_name;
  int generator = 0;  // group element applied crossing front to back
  int inverse = 0;    // applied crossing back to front
};

/// The labeled cut surface.
struct PortalSurface {
  Cone cone;
  ConePieces pieces;
  std::vector<ConeSegment> segments;
  double scale = 1;  // knot diameter, for tolerances
};

/// Returns `hint` when it is usable, otherwise searches directions near +z
/// at distance 10 x diameter for a generic apex.
Vec3 choose_apex(const KnotCurve& curve, std::optional<Vec3> hint = std::nullopt);

/// True if `apex` gives a non-degenerate cone with a generic view.
bool apex_is_generic(const KnotCurve& curve, Vec3 apex);

Cone build_cone(const KnotCurve& curve, Vec3 apex);

/// Cuts the cone along its self-intersections and returns the connected
/// pieces, ordered by the first curve parameter on their boundary.
ConePieces split_cone(const Cone& cone);

std::vector<ConeSegment> assign_generators(const Cone& cone, const ConePieces& pieces,
                                           const std::vector<std::string>& gen_to_cone,
                                           const GroupTable& group);

/// Checks that monodromy around every double line is trivial, i.e. the
/// labels satisfy after = far^s * before * far^-s. Returns violations.
std::vector<std::string> check_labeling(const ConePieces& pieces,
                                        const std::vector<ConeSegment>& segments,
                                        const GroupTable& group);

}  // namespace knotcover
