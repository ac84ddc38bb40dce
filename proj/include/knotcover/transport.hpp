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

#include <span>
#include <vector>

#include "knotcover/cone.hpp"
#include "knotcover/group.hpp"
#include "knotcover/vec.hpp"

namespace knotcover {

/// The sheet the observer is in, as a group element.
struct WorldState {
  int element = 0;
  bool operator==(const WorldState&) const = default;
};

struct CrossingEvent {
  double t = 0;  // ray parameter in (0, 1)
  int segment = 0;
  /// +1 crossing front to back, -1 back to front.
  int direction = 0;
  int applied = 0;
  Vec3 point;
  bool operator==(const CrossingEvent&) const = default;
};

/// Crossings of the open segment (from, to) with the cut surface, sorted by
/// t. Throws GenericityError when the segment grazes an edge, a cut, the
/// knot or the apex, or when an endpoint lies on the surface.
std::vector<CrossingEvent> ray_crossings(Vec3 from, Vec3 to, const PortalSurface& surface);

/// Right-multiplies the state by each applied element in order.
WorldState transport(WorldState state, std::span<const CrossingEvent> events, const GroupTable& group);

struct PathTransport {
  WorldState state;
  std::vector<CrossingEvent> events;
  int attempts = 0;  // jitter attempts used, 0 if none were needed
  Vec3 end;          // last path vertex as actually used
};

/// Transports along consecutive legs of `path`. A non-generic path is
/// retried with every vertex jittered by 1e-6 x diameter, up to 8 times; the
/// jitter of a vertex depends only on its coordinates and the attempt.
PathTransport transport_path(WorldState state, std::span<const Vec3> path, const PortalSurface& surface,
                             const GroupTable& group);

/// Deterministic jitter of `p` with magnitude at most `magnitude`.
Vec3 jitter_point(Vec3 p, int attempt, double magnitude);

}  // namespace knotcover
