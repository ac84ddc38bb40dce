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

#include "knotcover/knot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "knotcover/error.hpp"
#include "knotcover/geometry.hpp"

namespace knotcover {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

size_t cyclic_gap(size_t i, size_t j, size_t n) {
  size_t d = i > j ? i - j : j - i;
  return std::min(d, n - d);
}

double segment_pair_distance(const KnotCurve& c, size_t i, size_t j) {
  size_t n = c.size();
  i %= n;
  j %= n;
  if (cyclic_gap(i, j, n) < 2) return 0;
  return segment_distance(c.point(i), c.point(i + 1), c.point(j),
                          c.point(j + 1));
}

}  // namespace

Vec3 ParametricKnot::evaluate(double t) const {
  double out[3] = {0, 0, 0};
  for (int axis = 0; axis < 3; ++axis) {
    for (const TrigTerm& term : terms[axis]) {
      out[axis] += term.amplitude * std::sin(term.frequency * t + term.phase);
    }
  }
  return {out[0], out[1], out[2]};
}

Vec3 KnotCurve::at(double s) const {
  double n = static_cast<double>(points.size());
  s = std::fmod(s, n);
  if (s < 0) s += n;
  auto i = static_cast<size_t>(s);
  return lerp(point(i), point(i + 1), s - static_cast<double>(i));
}

Vec3 KnotCurve::segment_direction(size_t i) const {
  return normalized(point(i + 1) - point(i));
}

double KnotCurve::diameter() const {
  double best = 0;
  for (size_t i = 0; i < points.size(); ++i) {
    for (size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, norm(points[i] - points[j]));
    }
  }
  return best;
}

Vec3 KnotCurve::center() const {
  Vec3 sum;
  for (const Vec3& p : points) sum += p;
  return points.empty() ? sum : sum / static_cast<double>(points.size());
}

double KnotCurve::length() const {
  double total = 0;
  for (size_t i = 0; i < points.size(); ++i) {
    total += norm(point(i + 1) - point(i));
  }
  return total;
}

double min_nonadjacent_distance(const KnotCurve& curve) {
  size_t n = curve.size();
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 2; j < n; ++j) {
      if (cyclic_gap(i, j, n) < 2) continue;
      best = std::min(best, segment_pair_distance(curve, i, j));
    }
  }
  return best;
}

double min_self_distance(const KnotCurve& curve) {
  size_t n = curve.size();
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 2; j < n; ++j) {
      if (cyclic_gap(i, j, n) < 2) continue;
      double d = segment_pair_distance(curve, i, j);
      if (d >= best) continue;
      bool local_min = d <= segment_pair_distance(curve, i + 1, j) &&
                       d <= segment_pair_distance(curve, i + n - 1, j) &&
                       d <= segment_pair_distance(curve, i, j + 1) &&
                       d <= segment_pair_distance(curve, i, j + n - 1);
      if (local_min) best = d;
    }
  }
  if (!std::isinf(best)) return best;
  // No pair is a local minimum (convex curves): fall back to pairs at least
  // a quarter of the curve apart.
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (cyclic_gap(i, j, n) * 4 >= n) best = std::min(best, segment_pair_distance(curve, i, j));
    }
  }
  return std::isinf(best) ? min_nonadjacent_distance(curve) : best;
}

void check_simple(const KnotCurve& curve) {
  size_t n = curve.size();
  if (n < 4) throw GeometryError("knot curve needs at least 4 points");
  for (size_t i = 0; i < n; ++i) {
    if (curve.point(i) == curve.point(i + 1)) {
      throw GeometryError("knot curve has coincident consecutive points at " +
                          std::to_string(i));
    }
  }
  double tol = 1e-6 * curve.diameter();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 2; j < n; ++j) {
      if (cyclic_gap(i, j, n) < 2) continue;
      if (segment_pair_distance(curve, i, j) <= tol) {
        throw GeometryError("knot polyline self-intersects near segments " +
                            std::to_string(i) + " and " + std::to_string(j) +
                            "; increase the sample count");
      }
    }
  }
}

KnotCurve sample_parametric(const ParametricKnot& knot, int n) {
  if (n < 16) throw GeometryError("sample count must be at least 16");
  for (const auto& axis : knot.terms) {
    for (const TrigTerm& term : axis) {
      if (std::abs(term.frequency - std::round(term.frequency)) > 1e-12) {
        throw GeometryError("term frequencies must be integers for a closed "
                            "curve");
      }
    }
  }
  KnotCurve curve;
  curve.source = CurveSource::kParametric;
  curve.points.reserve(n);
  for (int i = 0; i < n; ++i) {
    curve.points.push_back(knot.evaluate(kTwoPi * i / n));
  }
  check_simple(curve);
  return curve;
}

KnotCurve catmull_rom(std::span<const Vec3> control, int samples_per_span) {
  size_t n = control.size();
  if (n < 4) throw GeometryError("Catmull-Rom needs at least 4 control points");
  if (samples_per_span < 1) throw GeometryError("samples_per_span must be >= 1");
  for (size_t i = 0; i < n; ++i) {
    if (control[i] == control[(i + 1) % n]) {
      throw GeometryError("coincident adjacent control points at " +
                          std::to_string(i));
    }
  }
  KnotCurve curve;
  curve.source = CurveSource::kControlPoints;
  curve.points.reserve(n * samples_per_span);
  for (size_t i = 0; i < n; ++i) {
    Vec3 p0 = control[(i + n - 1) % n];
    Vec3 p1 = control[i];
    Vec3 p2 = control[(i + 1) % n];
    Vec3 p3 = control[(i + 2) % n];
    // Centripetal knot spacing (alpha = 1/2).
    double t0 = 0;
    double t1 = t0 + std::sqrt(norm(p1 - p0));
    double t2 = t1 + std::sqrt(norm(p2 - p1));
    double t3 = t2 + std::sqrt(norm(p3 - p2));
    curve.points.push_back(p1);
    for (int k = 1; k < samples_per_span; ++k) {
      double t = t1 + (t2 - t1) * k / samples_per_span;
      Vec3 a1 = p0 * ((t1 - t) / (t1 - t0)) + p1 * ((t - t0) / (t1 - t0));
      Vec3 a2 = p1 * ((t2 - t) / (t2 - t1)) + p2 * ((t - t1) / (t2 - t1));
      Vec3 a3 = p2 * ((t3 - t) / (t3 - t2)) + p3 * ((t - t2) / (t3 - t2));
      Vec3 b1 = a1 * ((t2 - t) / (t2 - t0)) + a2 * ((t - t0) / (t2 - t0));
      Vec3 b2 = a2 * ((t3 - t) / (t3 - t1)) + a3 * ((t - t1) / (t3 - t1));
      curve.points.push_back(b1 * ((t2 - t) / (t2 - t1)) +
                             b2 * ((t - t1) / (t2 - t1)));
    }
  }
  check_simple(curve);
  return curve;
}

TubeMesh tube_mesh(const KnotCurve& curve, double radius, int ring_segments) {
  if (!(radius > 0)) throw GeometryError("tube radius must be positive");
  if (ring_segments < 3) throw GeometryError("ring_segments must be >= 3");
  double clearance = min_self_distance(curve) / 2;
  if (radius >= clearance) {
    throw GeometryError("tube radius " + std::to_string(radius) +
                        " exceeds half the curve's self-distance (" +
                        std::to_string(clearance) + ")");
  }
  size_t n = curve.size();
  auto m = static_cast<size_t>(ring_segments);

  std::vector<Vec3> tangent(n);
  for (size_t i = 0; i < n; ++i) {
    tangent[i] = normalized(curve.point(i + 1) - curve.point(i + n - 1));
  }
  // Rotation-minimizing frames by double reflection, closed up by spreading
  // the holonomy angle along the curve.
  std::vector<Vec3> normal(n + 1);
  normal[0] = any_orthogonal(tangent[0]);
  for (size_t i = 0; i < n; ++i) {
    Vec3 v1 = curve.point(i + 1) - curve.point(i);
    double c1 = dot(v1, v1);
    Vec3 r = normal[i];
    Vec3 t = tangent[i];
    Vec3 t_next = tangent[(i + 1) % n];
    Vec3 r_l = r - v1 * (2 / c1 * dot(v1, r));
    Vec3 t_l = t - v1 * (2 / c1 * dot(v1, t));
    Vec3 v2 = t_next - t_l;
    double c2 = dot(v2, v2);
    normal[i + 1] = c2 > 0 ? r_l - v2 * (2 / c2 * dot(v2, r_l)) : r_l;
  }
  double holonomy = std::atan2(dot(cross(normal[0], normal[n]), tangent[0]),
                               dot(normal[0], normal[n]));

  TubeMesh mesh;
  mesh.radius = radius;
  mesh.vertices.reserve(n * m);
  mesh.normals.reserve(n * m);
  for (size_t i = 0; i < n; ++i) {
    double twist = -holonomy * static_cast<double>(i) / static_cast<double>(n);
    Vec3 b0 = cross(tangent[i], normal[i]);
    Vec3 nrm = normal[i] * std::cos(twist) + b0 * std::sin(twist);
    nrm = normalized(nrm - tangent[i] * dot(nrm, tangent[i]));
    Vec3 bin = cross(tangent[i], nrm);
    for (size_t j = 0; j < m; ++j) {
      double phi = kTwoPi * static_cast<double>(j) / static_cast<double>(m);
      Vec3 radial = nrm * std::cos(phi) + bin * std::sin(phi);
      mesh.vertices.push_back(curve.point(i) + radial * radius);
      mesh.normals.push_back(radial);
    }
  }
  for (size_t i = 0; i < n; ++i) {
    size_t next = (i + 1) % n;
    for (size_t j = 0; j < m; ++j) {
      auto a = static_cast<uint32_t>(i * m + j);
      auto b = static_cast<uint32_t>(i * m + (j + 1) % m);
      auto c = static_cast<uint32_t>(next * m + j);
      auto d = static_cast<uint32_t>(next * m + (j + 1) % m);
      mesh.triangles.push_back({a, b, d});
      mesh.triangles.push_back({a, d, c});
    }
  }
  return mesh;
}

}  // namespace knotcover
