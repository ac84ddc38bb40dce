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
#include <vector>

#include "knotcover/cone.hpp"
#include "knotcover/group.hpp"
#include "knotcover/knot.hpp"
#include "knotcover/transport.hpp"
#include "knotcover/vec.hpp"

namespace knotcover {

/// Pinhole camera. Screen coordinates have the origin at the top-left
/// corner, x to the right and y down; pixel (i, j) has its center at
/// (i + 0.5, j + 0.5).
struct Camera {
  Vec3 position;
  Vec3 forward{0, 0, 1};
  Vec3 up{0, 1, 0};
  double vfov = 1.0471975511965976;  // 60 degrees
  int width = 640;
  int height = 480;

  static Camera look_at(Vec3 position, Vec3 target, int width, int height, Vec3 up = {0, 1, 0},
                        double vfov = 1.0471975511965976);

  /// Orthonormal basis; throws GeometryError if forward and up are parallel.
  Vec3 unit_forward() const;
  Vec3 right() const;
  Vec3 unit_up() const;
  double focal() const;
  double depth(Vec3 p) const;
  /// Screen position of a point in front of the camera.
  Vec2 project(Vec3 p) const;
  /// Unnormalized world direction of the ray through a screen position.
  Vec3 ray_direction(Vec2 screen) const;
  bool operator==(const Camera&) const = default;
};

struct ScreenSegment {
  Vec2 a;
  Vec2 b;
  double depth_a = 0;
  double depth_b = 0;
  int curve_segment = 0;
};

/// Perspective projection of the curve clipped to the near plane and to the
/// screen rectangle. Segments entirely behind the camera or off-screen are
/// dropped.
std::vector<ScreenSegment> project_knot(const Camera& camera, const KnotCurve& curve);

struct Region {
  /// Outer boundary (counterclockwise in x/y) followed by hole boundaries.
  std::vector<std::vector<Vec2>> loops;
  double area = 0;
};

/// A knot edge of the subdivision and the regions on either side.
struct RegionAdjacency {
  int curve_segment = 0;
  int left = 0;
  int right = 0;
  bool operator==(const RegionAdjacency&) const = default;
};

struct Arrangement {
  double width = 0;
  double height = 0;
  std::vector<Region> regions;
  std::vector<RegionAdjacency> adjacency;
};

/// Planar subdivision of the screen rectangle by the segments. Throws
/// GenericityError for overlapping segments or crossings within 1e-9 of a
/// segment end; callers perturb the camera.
Arrangement build_arrangement(const std::vector<ScreenSegment>& segments, double width, double height);

struct Pole {
  Vec2 point;
  double radius = 0;
};

/// Interior point farthest from the boundary of the loops (even-odd
/// interior), within `precision`; 0 selects 1% of the larger bounding box
/// side. Throws GeometryError for degenerate polygons.
Pole pole_of_inaccessibility(const std::vector<std::vector<Vec2>>& loops, double precision = 0);

struct RegionMap {
  Arrangement arrangement;
  std::vector<int> labels;
  std::vector<Pole> poles;
  std::vector<std::array<double, 4>> bboxes;  // min x, min y, max x, max y
};

/// World seen along the camera ray through `screen`, out to 100 x the
/// surface scale. Jitters the query point by up to `jitter_radius` when the
/// ray is not generic.
int ray_world(const Camera& camera, Vec2 screen, const PortalSurface& surface, const GroupTable& group,
              WorldState world, double jitter_radius);

RegionMap label_regions(Arrangement arrangement, const Camera& camera, const PortalSurface& surface,
                        const GroupTable& group, WorldState world);

/// Same map seen from world w: every label is left-multiplied by w.
RegionMap relabel(RegionMap map, WorldState world, const GroupTable& group);

/// Region containing a screen point; boundary points go to the lowest id.
int point_region(const RegionMap& map, Vec2 point);

/// Projection, subdivision and labeling with deterministic sub-pixel camera
/// perturbation when the projected knot is not generic.
RegionMap region_map(const Camera& camera, const KnotCurve& curve, const PortalSurface& surface,
                     const GroupTable& group, WorldState world);

}  // namespace knotcover
