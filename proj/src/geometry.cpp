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

#include "knotcover/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace knotcover {

double point_segment_distance(Vec3 p, Vec3 a, Vec3 b) {
  Vec3 ab = b - a;
  double len2 = dot(ab, ab);
  double t = len2 > 0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
  return norm(p - (a + ab * t));
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  Vec2 ab = b - a;
  double len2 = dot(ab, ab);
  double t = len2 > 0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
  return norm(p - (a + ab * t));
}

// Closest points between two segments (Ericson, Real-Time Collision
// Detection, 5.1.9).
double segment_distance(Vec3 p1, Vec3 q1, Vec3 p2, Vec3 q2) {
  Vec3 d1 = q1 - p1;
  Vec3 d2 = q2 - p2;
  Vec3 r = p1 - p2;
  double a = dot(d1, d1);
  double e = dot(d2, d2);
  double f = dot(d2, r);
  double s = 0;
  double t = 0;
  if (a <= 0 && e <= 0) return norm(r);
  if (a <= 0) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    double c = dot(d1, r);
    if (e <= 0) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      double b = dot(d1, d2);
      double denom = a * e - b * b;
      s = denom > 0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0) {
        t = 0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1) {
        t = 1;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return norm((p1 + d1 * s) - (p2 + d2 * t));
}

std::optional<SegmentHit2> intersect_segments(Vec2 a0, Vec2 a1, Vec2 b0,
                                              Vec2 b1) {
  Vec2 r = a1 - a0;
  Vec2 q = b1 - b0;
  double denom = cross(r, q);
  if (denom == 0) return std::nullopt;
  Vec2 w = b0 - a0;
  double s = cross(w, q) / denom;
  double t = cross(w, r) / denom;
  if (s < 0 || s > 1 || t < 0 || t > 1) return std::nullopt;
  return SegmentHit2{s, t};
}

bool parallel_overlap(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1, double tol) {
  Vec2 r = a1 - a0;
  double len = norm(r);
  if (len == 0) return false;
  double sin_angle = std::abs(cross(r, b1 - b0)) / (len * norm(b1 - b0));
  if (sin_angle > 1e-12) return false;
  if (std::abs(cross(r, b0 - a0)) / len > tol) return false;
  double t0 = dot(b0 - a0, r) / (len * len);
  double t1 = dot(b1 - a0, r) / (len * len);
  return std::max(t0, t1) > 0 && std::min(t0, t1) < 1;
}

double signed_area(std::span<const Vec2> loop) {
  double area = 0;
  for (size_t i = 0, n = loop.size(); i < n; ++i) {
    area += cross(loop[i], loop[(i + 1) % n]);
  }
  return area / 2;
}

bool inside_even_odd(std::span<const Vec2> loop, Vec2 p) {
  bool inside = false;
  for (size_t i = 0, n = loop.size(), j = n - 1; i < n; j = i++) {
    Vec2 a = loop[i];
    Vec2 b = loop[j];
    if ((a.y > p.y) != (b.y > p.y) &&
        p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
      inside = !inside;
    }
  }
  return inside;
}

bool inside_even_odd(const std::vector<std::vector<Vec2>>& loops, Vec2 p) {
  bool inside = false;
  for (const auto& loop : loops) {
    if (inside_even_odd(std::span<const Vec2>(loop), p)) inside = !inside;
  }
  return inside;
}

}  // namespace knotcover
