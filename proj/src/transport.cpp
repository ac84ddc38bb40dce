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

#include "knotcover/transport.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <random>

#include "knotcover/error.hpp"

namespace knotcover {

namespace {

constexpr double kBarycentricTolerance = 1e-9;
constexpr double kRayTolerance = 1e-9;
constexpr double kJitterFactor = 1e-6;
constexpr int kJitterAttempts = 8;

uint64_t mix(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace

std::vector<CrossingEvent> ray_crossings(Vec3 from, Vec3 to, const PortalSurface& surface) {
  const Cone& cone = surface.cone;
  const ConePieces& pieces = surface.pieces;
  Vec3 dir = to - from;
  double length = norm(dir);
  std::vector<CrossingEvent> out;
  if (length == 0) return out;
  Vec3 p = cone.apex;
  size_t n = cone.triangle_count();
  for (size_t i = 0; i < n; ++i) {
    Vec3 e1 = cone.rim[i] - p;
    Vec3 e2 = cone.rim[(i + 1) % n] - p;
    Vec3 h = cross(dir, e2);
    double det = dot(e1, h);
    if (std::abs(det) <= 1e-14 * length * norm(e1) * norm(e2)) continue;
    double inv = 1 / det;
    Vec3 s = from - p;
    double beta = dot(s, h) * inv;
    if (beta < -kBarycentricTolerance || beta > 1 + kBarycentricTolerance) continue;
    Vec3 q = cross(s, e1);
    double gamma = dot(dir, q) * inv;
    if (gamma < -kBarycentricTolerance || beta + gamma > 1 + kBarycentricTolerance) continue;
    double t = dot(e2, q) * inv;
    if (t < -kRayTolerance || t > 1 + kRayTolerance) continue;
    if (t <= kRayTolerance || t >= 1 - kRayTolerance) {
      throw GenericityError("path endpoint lies on the cut surface");
    }
    double radial = beta + gamma;
    if (radial <= kBarycentricTolerance || radial >= 1 - kBarycentricTolerance) {
      throw GenericityError("ray passes through the apex or the knot");
    }
    double u = gamma / radial;
    if (u <= kBarycentricTolerance || u >= 1 - kBarycentricTolerance) {
      throw GenericityError("ray grazes a cone edge");
    }
    int tri = static_cast<int>(i);
    for (int id : pieces.wedges_of_triangle[tri]) {
      const Wedge& w = pieces.wedges[id];
      if (w.u1 < 1 && std::abs(u - w.u1) <= kBarycentricTolerance) {
        throw GenericityError("ray grazes a cut of the cone");
      }
    }
    int piece = pieces.piece_at(tri, u);
    const ConeSegment& seg = surface.segments[piece];
    CrossingEvent ev;
    ev.t = t;
    ev.segment = piece;
    ev.direction = dot(dir, cone.normal(i)) < 0 ? 1 : -1;
    ev.applied = ev.direction > 0 ? seg.generator : seg.inverse;
    ev.point = from + dir * t;
    out.push_back(ev);
  }
  std::sort(out.begin(), out.end(), [](const CrossingEvent& a, const CrossingEvent& b) { return a.t < b.t; });
  for (size_t k = 1; k < out.size(); ++k) {
    if (out[k].t - out[k - 1].t <= kRayTolerance) {
      throw GenericityError("ray crosses two sheets at the same point");
    }
  }
  return out;
}

WorldState transport(WorldState state, std::span<const CrossingEvent> events, const GroupTable& group) {
  for (const CrossingEvent& ev : events) state.element = group.mul(state.element, ev.applied);
  return state;
}

Vec3 jitter_point(Vec3 p, int attempt, double magnitude) {
  uint64_t h = static_cast<uint64_t>(attempt);
  for (double c : {p.x, p.y, p.z}) h = mix(h, std::bit_cast<uint64_t>(c == 0 ? 0.0 : c));
  std::mt19937_64 rng(h);
  std::uniform_real_distribution<double> dist(-1, 1);
  Vec3 d;
  do {
    d = {dist(rng), dist(rng), dist(rng)};
  } while (dot(d, d) > 1);
  return p + d * magnitude;
}

PathTransport transport_path(WorldState state, std::span<const Vec3> path, const PortalSurface& surface,
                             const GroupTable& group) {
  double magnitude = kJitterFactor * surface.scale;
  std::vector<Vec3> points(path.begin(), path.end());
  for (int attempt = 0; attempt <= kJitterAttempts; ++attempt) {
    if (attempt > 0) {
      for (size_t k = 0; k < path.size(); ++k) points[k] = jitter_point(path[k], attempt, magnitude);
    }
    try {
      PathTransport result;
      result.state = state;
      result.attempts = attempt;
      for (size_t k = 0; k + 1 < points.size(); ++k) {
        auto events = ray_crossings(points[k], points[k + 1], surface);
        result.state = transport(result.state, events, group);
        result.events.insert(result.events.end(), events.begin(), events.end());
      }
      if (!points.empty()) result.end = points.back();
      return result;
    } catch (const GenericityError&) {
      if (attempt == kJitterAttempts) throw;
    }
  }
  throw GenericityError("path could not be made generic");
}

}  // namespace knotcover
