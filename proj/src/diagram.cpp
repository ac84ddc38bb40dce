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

#include "knotcover/diagram.hpp"

#include <algorithm>
#include <cmath>

#include "knotcover/error.hpp"
#include "knotcover/geometry.hpp"

namespace knotcover {

namespace {

constexpr double kEndpointTolerance = 1e-6;
constexpr double kDepthTolerance = 1e-9;

}  // namespace

Projection Projection::orthographic(Vec3 view_direction) {
  Projection p;
  p.w_ = normalized(view_direction);
  p.u_ = any_orthogonal(p.w_);
  p.v_ = cross(-p.w_, p.u_);
  return p;
}

Projection Projection::central(Vec3 eye, Vec3 target, bool near_is_over) {
  Projection p = orthographic(target - eye);
  p.central_ = true;
  p.eye_ = eye;
  p.near_is_over_ = near_is_over;
  return p;
}

Vec2 Projection::project(Vec3 p) const {
  if (!central_) return {dot(p, u_), dot(p, v_)};
  Vec3 rel = p - eye_;
  double z = dot(rel, w_);
  return {dot(rel, u_) / z, dot(rel, v_) / z};
}

double Projection::depth(Vec3 p) const {
  double z = central_ ? dot(p - eye_, w_) : dot(p, w_);
  return near_is_over_ ? z : -z;
}

double Projection::lift_parameter(Vec3 a, Vec3 b, double s) const {
  if (!central_) return s;
  double za = dot(a - eye_, w_);
  double zb = dot(b - eye_, w_);
  return s * za / ((1 - s) * zb + s * za);
}

int Diagram::arc_at(double s) const {
  if (arcs.size() <= 1) return 0;
  for (size_t k = 1; k < arcs.size(); ++k) {
    if (s >= arcs[k].begin && s < arcs[k].end) return static_cast<int>(k);
  }
  return 0;
}

Diagram project_and_cross(const KnotCurve& curve, const Projection& projection) {
  size_t n = curve.size();
  if (n < 4) throw GeometryError("curve too short for a diagram");
  Diagram d;
  d.curve_size = n;
  d.polyline.reserve(n);
  for (const Vec3& p : curve.points) {
    if (projection.is_central() && projection.depth(p) == 0) {
      throw GenericityError("curve point lies in the eye plane");
    }
    d.polyline.push_back(projection.project(p));
  }
  double extent = 0;
  for (const Vec2& p : d.polyline) extent = std::max(extent, norm(p - d.polyline[0]));
  for (size_t i = 0; i < n; ++i) {
    if (norm(d.polyline[(i + 1) % n] - d.polyline[i]) <= 1e-12 * extent) {
      throw GenericityError("segment " + std::to_string(i) + " is parallel to the view direction");
    }
  }
  double depth_tol = kDepthTolerance * curve.diameter();

  struct Raw {
    Vec2 position;
    double over_param, under_param;
    Vec2 over_dir, under_dir;
  };
  std::vector<Raw> raw;
  for (size_t i = 0; i < n; ++i) {
    Vec2 a0 = d.polyline[i], a1 = d.polyline[(i + 1) % n];
    for (size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      Vec2 b0 = d.polyline[j], b1 = d.polyline[(j + 1) % n];
      if (parallel_overlap(a0, a1, b0, b1, 1e-12 * extent)) {
        throw GenericityError("projected segments " + std::to_string(i) + " and " + std::to_string(j) +
                              " overlap");
      }
      auto hit = intersect_segments(a0, a1, b0, b1);
      if (!hit) continue;
      auto near_end = [](double s) { return s < kEndpointTolerance || s > 1 - kEndpointTolerance; };
      if (near_end(hit->s) || near_end(hit->t)) {
        throw GenericityError("crossing of segments " + std::to_string(i) + " and " + std::to_string(j) +
                              " is too close to a vertex");
      }
      double si = projection.lift_parameter(curve.point(i), curve.point(i + 1), hit->s);
      double sj = projection.lift_parameter(curve.point(j), curve.point(j + 1), hit->t);
      double di = projection.depth(lerp(curve.point(i), curve.point(i + 1), si));
      double dj = projection.depth(lerp(curve.point(j), curve.point(j + 1), sj));
      if (std::abs(di - dj) < depth_tol) {
        throw GenericityError("segments " + std::to_string(i) + " and " + std::to_string(j) +
                              " meet at equal depth");
      }
      Raw r;
      r.position = lerp(a0, a1, hit->s);
      double pi = static_cast<double>(i) + si;
      double pj = static_cast<double>(j) + sj;
      Vec2 di2 = a1 - a0, dj2 = b1 - b0;
      if (di < dj) {
        r.over_param = pi, r.under_param = pj, r.over_dir = di2, r.under_dir = dj2;
      } else {
        r.over_param = pj, r.under_param = pi, r.over_dir = dj2, r.under_dir = di2;
      }
      raw.push_back(r);
    }
  }
  for (size_t a = 0; a < raw.size(); ++a) {
    for (size_t b = a + 1; b < raw.size(); ++b) {
      if (norm(raw[a].position - raw[b].position) <= 1e-9 * extent) {
        throw GenericityError("two crossings coincide (triple point)");
      }
    }
  }

  std::sort(raw.begin(), raw.end(), [](const Raw& x, const Raw& y) { return x.under_param < y.under_param; });
  size_t count = raw.size();
  if (count == 0) {
    d.arcs.push_back({0, 0, static_cast<double>(n)});
    return d;
  }
  // Arc k ends at undercrossing k; arc 0 wraps through parameter 0.
  for (size_t k = 0; k < count; ++k) {
    double begin = raw[(k + count - 1) % count].under_param;
    d.arcs.push_back({static_cast<int>(k), begin, raw[k].under_param});
  }
  for (size_t k = 0; k < count; ++k) {
    const Raw& r = raw[k];
    Crossing c;
    c.position = r.position;
    c.over_param = r.over_param;
    c.under_param = r.under_param;
    c.under_in_arc = static_cast<int>(k);
    c.under_out_arc = static_cast<int>((k + 1) % count);
    c.over_arc = d.arc_at(r.over_param);
    // The image basis has u x v towards the eye; a far-over diagram is
    // viewed from the other side, which mirrors the picture.
    double handed = cross(r.over_dir, r.under_dir);
    if (!projection.near_is_over()) handed = -handed;
    c.sign = handed > 0 ? 1 : -1;
    d.crossings.push_back(c);
  }
  return d;
}

Presentation wirtinger(const Diagram& diagram, const std::vector<std::string>& names) {
  size_t arcs = std::max<size_t>(diagram.arcs.size(), 1);
  Presentation p;
  p.generators = names.empty() ? default_generator_names(arcs) : names;
  if (p.generators.size() != arcs) {
    throw GeometryError("diagram has " + std::to_string(arcs) + " arcs but " +
                        std::to_string(p.generators.size()) + " generator names were given");
  }
  for (const Crossing& c : diagram.crossings) {
    if (c.over_arc < 0 || c.under_in_arc < 0 || c.under_out_arc < 0 ||
        static_cast<size_t>(std::max({c.over_arc, c.under_in_arc, c.under_out_arc})) >= arcs) {
      throw GeometryError("inconsistent arc wiring in crossing data");
    }
    int over = letter(c.over_arc);
    int in = letter(c.under_in_arc);
    int out = letter(c.under_out_arc);
    if (c.sign > 0) {
      p.relators.push_back({over, in, -over, -out});
    } else {
      p.relators.push_back({-over, in, over, -out});
    }
  }
  return p;
}

std::vector<std::string> default_generator_names(size_t count) {
  std::vector<std::string> out;
  for (char c = 'a'; c <= 'z' && out.size() < count; ++c) {
    if (c != 'e') out.emplace_back(1, c);
  }
  for (size_t k = 1; out.size() < count; ++k) out.push_back("x" + std::to_string(k));
  return out;
}

}  // namespace knotcover
