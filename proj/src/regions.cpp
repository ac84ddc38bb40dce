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

#include "knotcover/regions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "knotcover/error.hpp"
#include "knotcover/geometry.hpp"

namespace knotcover {

namespace {

constexpr double kFarFactor = 100;
constexpr double kEndpointTolerance = 1e-9;
constexpr int kJitterAttempts = 8;

}  // namespace

Camera Camera::look_at(Vec3 position, Vec3 target, int width, int height, Vec3 up, double vfov) {
  Camera c;
  c.position = position;
  c.forward = target - position;
  c.up = up;
  c.vfov = vfov;
  c.width = width;
  c.height = height;
  return c;
}

Vec3 Camera::unit_forward() const { return normalized(forward); }

Vec3 Camera::right() const {
  Vec3 r = cross(unit_forward(), up);
  if (norm(r) <= 1e-12 * norm(up)) throw GeometryError("camera up vector is parallel to the view direction");
  return normalized(r);
}

Vec3 Camera::unit_up() const { return cross(right(), unit_forward()); }

double Camera::focal() const { return (height / 2.0) / std::tan(vfov / 2); }

double Camera::depth(Vec3 p) const { return dot(p - position, unit_forward()); }

Vec2 Camera::project(Vec3 p) const {
  Vec3 rel = p - position;
  double z = dot(rel, unit_forward());
  double f = focal();
  return {width / 2.0 + f * dot(rel, right()) / z, height / 2.0 - f * dot(rel, unit_up()) / z};
}

Vec3 Camera::ray_direction(Vec2 screen) const {
  return unit_forward() * focal() + right() * (screen.x - width / 2.0) - unit_up() * (screen.y - height / 2.0);
}

namespace {

// Liang-Barsky clip of [a, b] to the screen rectangle; clipped ends are
// snapped exactly onto the border.
bool clip_to_rect(Vec2& a, Vec2& b, double width, double height) {
  double t0 = 0;
  double t1 = 1;
  int side0 = -1;
  int side1 = -1;
  Vec2 d = b - a;
  const double p[4] = {-d.x, d.x, -d.y, d.y};
  const double q[4] = {a.x, width - a.x, a.y, height - a.y};
  for (int k = 0; k < 4; ++k) {
    if (p[k] == 0) {
      if (q[k] < 0) return false;
      continue;
    }
    double r = q[k] / p[k];
    if (p[k] < 0) {
      if (r > t1) return false;
      if (r > t0) t0 = r, side0 = k;
    } else {
      if (r < t0) return false;
      if (r < t1) t1 = r, side1 = k;
    }
  }
  auto snap = [&](Vec2& v, int side) {
    if (side == 0) v.x = 0;
    if (side == 1) v.x = width;
    if (side == 2) v.y = 0;
    if (side == 3) v.y = height;
    v.x = std::clamp(v.x, 0.0, width);
    v.y = std::clamp(v.y, 0.0, height);
  };
  Vec2 na = side0 >= 0 ? a + d * t0 : a;
  Vec2 nb = side1 >= 0 ? a + d * t1 : b;
  if (side0 >= 0) snap(na, side0);
  if (side1 >= 0) snap(nb, side1);
  a = na;
  b = nb;
  return !(a == b);
}

}  // namespace

std::vector<ScreenSegment> project_knot(const Camera& camera, const KnotCurve& curve) {
  std::vector<ScreenSegment> out;
  double near = 1e-7 * curve.diameter();
  size_t n = curve.size();
  for (size_t i = 0; i < n; ++i) {
    Vec3 a = curve.point(i);
    Vec3 b = curve.point(i + 1);
    double za = camera.depth(a);
    double zb = camera.depth(b);
    if (za < near && zb < near) continue;
    if (za < near) {
      a = lerp(a, b, (near - za) / (zb - za));
      za = near;
    } else if (zb < near) {
      b = lerp(a, b, (near - za) / (zb - za));
      zb = near;
    }
    Vec2 pa = camera.project(a);
    Vec2 pb = camera.project(b);
    if (!clip_to_rect(pa, pb, camera.width, camera.height)) continue;
    out.push_back({pa, pb, za, zb, static_cast<int>(i)});
  }
  return out;
}

namespace {

struct Dcel {
  std::vector<Vec2> vertices;
  std::map<std::pair<double, double>, int> index;
  struct Edge {
    int u, v, curve_segment;
  };
  std::vector<Edge> edges;

  int vertex(Vec2 p) {
    auto [it, inserted] = index.try_emplace({p.x, p.y}, static_cast<int>(vertices.size()));
    if (inserted) vertices.push_back(p);
    return it->second;
  }
};

struct SplitPoint {
  double t;
  Vec2 p;
};

void add_chain(Dcel& dcel, std::vector<SplitPoint> points, int curve_segment) {
  std::sort(points.begin(), points.end(), [](const SplitPoint& a, const SplitPoint& b) { return a.t < b.t; });
  for (size_t k = 0; k + 1 < points.size(); ++k) {
    int u = dcel.vertex(points[k].p);
    int v = dcel.vertex(points[k + 1].p);
    if (u != v) dcel.edges.push_back({u, v, curve_segment});
  }
}

}  // namespace

Arrangement build_arrangement(const std::vector<ScreenSegment>& segments, double width, double height) {
  Arrangement arr;
  arr.width = width;
  arr.height = height;
  double extent = std::max(width, height);
  size_t m = segments.size();
  std::vector<std::vector<SplitPoint>> splits(m);
  for (size_t i = 0; i < m; ++i) splits[i] = {{0, segments[i].a}, {1, segments[i].b}};

  for (size_t i = 0; i < m; ++i) {
    const ScreenSegment& s = segments[i];
    for (size_t j = i + 1; j < m; ++j) {
      const ScreenSegment& r = segments[j];
      bool shares = s.a == r.a || s.a == r.b || s.b == r.a || s.b == r.b;
      if (parallel_overlap(s.a, s.b, r.a, r.b, 1e-12 * extent)) {
        throw GenericityError("projected knot segments overlap");
      }
      if (shares) continue;
      auto hit = intersect_segments(s.a, s.b, r.a, r.b);
      if (!hit) continue;
      auto near_end = [](double t) { return t < kEndpointTolerance || t > 1 - kEndpointTolerance; };
      if (near_end(hit->s) || near_end(hit->t)) {
        throw GenericityError("projected crossing too close to a segment end");
      }
      Vec2 p = lerp(s.a, s.b, hit->s);
      splits[i].push_back({hit->s, p});
      splits[j].push_back({hit->t, p});
    }
  }

  Dcel dcel;
  const Vec2 corners[4] = {{0, 0}, {width, 0}, {width, height}, {0, height}};
  std::vector<SplitPoint> border[4];
  for (int k = 0; k < 4; ++k) border[k] = {{0, corners[k]}, {1, corners[(k + 1) % 4]}};
  auto on_border = [&](Vec2 p) {
    if (p.y == 0) border[0].push_back({p.x / width, p});
    if (p.x == width) border[1].push_back({p.y / height, p});
    if (p.y == height) border[2].push_back({1 - p.x / width, p});
    if (p.x == 0) border[3].push_back({1 - p.y / height, p});
  };
  for (const ScreenSegment& s : segments) {
    on_border(s.a);
    on_border(s.b);
  }
  for (int k = 0; k < 4; ++k) add_chain(dcel, border[k], -1);
  for (size_t i = 0; i < m; ++i) add_chain(dcel, splits[i], segments[i].curve_segment);

  // Drop duplicate and dangling edges.
  {
    std::set<std::pair<int, int>> seen;
    for (const auto& e : dcel.edges) {
      if (!seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second) {
        throw GenericityError("projected knot runs along another edge");
      }
    }
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<int> degree(dcel.vertices.size(), 0);
      for (const auto& e : dcel.edges) ++degree[e.u], ++degree[e.v];
      auto dangling = [&](const Dcel::Edge& e) { return degree[e.u] < 2 || degree[e.v] < 2; };
      size_t before = dcel.edges.size();
      dcel.edges.erase(std::remove_if(dcel.edges.begin(), dcel.edges.end(), dangling), dcel.edges.end());
      changed = dcel.edges.size() != before;
    }
  }

  // Half-edges 2k (u -> v) and 2k + 1 (v -> u).
  size_t he_count = dcel.edges.size() * 2;
  auto origin = [&](int h) { return h % 2 == 0 ? dcel.edges[h / 2].u : dcel.edges[h / 2].v; };
  auto target = [&](int h) { return origin(h ^ 1); };
  std::vector<std::vector<int>> outgoing(dcel.vertices.size());
  for (size_t h = 0; h < he_count; ++h) outgoing[origin(static_cast<int>(h))].push_back(static_cast<int>(h));
  std::vector<int> slot(he_count);
  for (auto& list : outgoing) {
    auto angle = [&](int h) {
      Vec2 d = dcel.vertices[target(h)] - dcel.vertices[origin(h)];
      return std::atan2(d.y, d.x);
    };
    std::sort(list.begin(), list.end(), [&](int a, int b) { return angle(a) < angle(b); });
    for (size_t k = 0; k < list.size(); ++k) slot[list[k]] = static_cast<int>(k);
  }
  auto next = [&](int h) {
    int t = h ^ 1;
    const auto& list = outgoing[origin(t)];
    return list[(slot[t] + list.size() - 1) % list.size()];
  };

  // Components, for hole assignment.
  std::vector<int> comp(dcel.vertices.size());
  std::iota(comp.begin(), comp.end(), 0);
  auto find = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (const auto& e : dcel.edges) comp[find(e.u)] = find(e.v);

  struct Cycle {
    std::vector<int> half_edges;
    std::vector<Vec2> loop;
    double area = 0;
    bool border = false;
  };
  std::vector<Cycle> cycles;
  std::vector<int> cycle_of(he_count, -1);
  for (size_t start = 0; start < he_count; ++start) {
    if (cycle_of[start] >= 0) continue;
    Cycle c;
    int h = static_cast<int>(start);
    do {
      cycle_of[h] = static_cast<int>(cycles.size());
      c.half_edges.push_back(h);
      c.loop.push_back(dcel.vertices[origin(h)]);
      if (dcel.edges[h / 2].curve_segment < 0) c.border = true;
      h = next(h);
    } while (h != static_cast<int>(start));
    c.area = signed_area(c.loop);
    cycles.push_back(std::move(c));
  }

  std::vector<int> region_of_cycle(cycles.size(), -1);
  for (size_t k = 0; k < cycles.size(); ++k) {
    if (cycles[k].area > 0) {
      region_of_cycle[k] = static_cast<int>(arr.regions.size());
      arr.regions.push_back({{cycles[k].loop}, cycles[k].area});
    }
  }
  for (size_t k = 0; k < cycles.size(); ++k) {
    const Cycle& c = cycles[k];
    if (c.area > 0 || c.border) continue;
    int own = find(origin(c.half_edges[0]));
    Vec2 probe = c.loop[0];
    int best = -1;
    double best_area = 0;
    for (size_t f = 0; f < cycles.size(); ++f) {
      if (region_of_cycle[f] < 0 || find(origin(cycles[f].half_edges[0])) == own) continue;
      if (!inside_even_odd(std::span<const Vec2>(cycles[f].loop), probe)) continue;
      if (best < 0 || cycles[f].area < best_area) best = static_cast<int>(f), best_area = cycles[f].area;
    }
    if (best < 0) throw GeometryError("subdivision hole is not contained in any region");
    region_of_cycle[k] = region_of_cycle[best];
    Region& r = arr.regions[region_of_cycle[best]];
    r.loops.push_back(c.loop);
    r.area += c.area;
  }

  std::set<std::tuple<int, int, int>> adj;
  for (size_t e = 0; e < dcel.edges.size(); ++e) {
    int seg = dcel.edges[e].curve_segment;
    if (seg < 0) continue;
    int left = region_of_cycle[cycle_of[2 * e]];
    int right = region_of_cycle[cycle_of[2 * e + 1]];
    if (left < 0 || right < 0) continue;
    if (adj.insert({seg, left, right}).second) arr.adjacency.push_back({seg, left, right});
  }
  return arr;
}

namespace {

double boundary_distance(const std::vector<std::vector<Vec2>>& loops, Vec2 p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& loop : loops) {
    for (size_t i = 0, n = loop.size(); i < n; ++i) {
      best = std::min(best, point_segment_distance(p, loop[i], loop[(i + 1) % n]));
    }
  }
  return best;
}

double signed_distance(const std::vector<std::vector<Vec2>>& loops, Vec2 p) {
  double d = boundary_distance(loops, p);
  return inside_even_odd(loops, p) ? d : -d;
}

struct Cell {
  Vec2 c;
  double h;
  double d;
  double max;
};

Cell make_cell(const std::vector<std::vector<Vec2>>& loops, Vec2 c, double h) {
  double d = signed_distance(loops, c);
  return {c, h, d, d + h * std::sqrt(2.0)};
}

}  // namespace

Pole pole_of_inaccessibility(const std::vector<std::vector<Vec2>>& loops, double precision) {
  if (loops.empty() || loops[0].size() < 3) throw GeometryError("degenerate polygon");
  Vec2 lo = loops[0][0];
  Vec2 hi = loops[0][0];
  for (const Vec2& p : loops[0]) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  double w = hi.x - lo.x;
  double h = hi.y - lo.y;
  double cell = std::min(w, h);
  if (cell <= 0) throw GeometryError("degenerate polygon");
  if (precision <= 0) precision = 0.01 * std::max(w, h);

  auto cmp = [](const Cell& a, const Cell& b) { return a.max < b.max; };
  std::priority_queue<Cell, std::vector<Cell>, decltype(cmp)> queue(cmp);
  double half = cell / 2;
  for (double x = lo.x; x < hi.x; x += cell) {
    for (double y = lo.y; y < hi.y; y += cell) queue.push(make_cell(loops, {x + half, y + half}, half));
  }

  // Start from the area centroid of the outer loop, or the box center.
  double a = 0;
  Vec2 centroid;
  const auto& outer = loops[0];
  for (size_t i = 0, n = outer.size(); i < n; ++i) {
    double f = cross(outer[i], outer[(i + 1) % n]);
    centroid = centroid + (outer[i] + outer[(i + 1) % n]) * f;
    a += f * 3;
  }
  Cell best = make_cell(loops, a != 0 ? centroid / a : lo, 0);
  Cell box = make_cell(loops, (lo + hi) / 2, 0);
  if (box.d > best.d) best = box;

  while (!queue.empty()) {
    Cell c = queue.top();
    queue.pop();
    if (c.d > best.d) best = c;
    if (c.max - best.d <= precision) continue;
    double q = c.h / 2;
    for (Vec2 o : {Vec2{-q, -q}, Vec2{q, -q}, Vec2{-q, q}, Vec2{q, q}}) queue.push(make_cell(loops, c.c + o, q));
  }
  if (best.d <= 0) throw GeometryError("degenerate polygon");
  return {best.c, best.d};
}

int ray_world(const Camera& camera, Vec2 screen, const PortalSurface& surface, const GroupTable& group,
              WorldState world, double jitter_radius) {
  double far = kFarFactor * surface.scale;
  for (int attempt = 0; attempt <= kJitterAttempts; ++attempt) {
    Vec2 q = screen;
    if (attempt > 0) {
      Vec3 j = jitter_point({screen.x, screen.y, 0}, attempt, jitter_radius);
      q = {j.x, j.y};
      if (norm(q - screen) >= jitter_radius) continue;
    }
    try {
      Vec3 dir = normalized(camera.ray_direction(q));
      auto events = ray_crossings(camera.position, camera.position + dir * far, surface);
      return transport(world, events, group).element;
    } catch (const GenericityError&) {
      if (attempt == kJitterAttempts) throw;
    }
  }
  throw GenericityError("camera ray could not be made generic");
}

RegionMap label_regions(Arrangement arrangement, const Camera& camera, const PortalSurface& surface,
                        const GroupTable& group, WorldState world) {
  RegionMap map;
  map.arrangement = std::move(arrangement);
  for (const Region& r : map.arrangement.regions) {
    Pole pole = pole_of_inaccessibility(r.loops);
    std::array<double, 4> box = {r.loops[0][0].x, r.loops[0][0].y, r.loops[0][0].x, r.loops[0][0].y};
    for (const Vec2& p : r.loops[0]) {
      box = {std::min(box[0], p.x), std::min(box[1], p.y), std::max(box[2], p.x), std::max(box[3], p.y)};
    }
    map.labels.push_back(ray_world(camera, pole.point, surface, group, world, pole.radius / 2));
    map.poles.push_back(pole);
    map.bboxes.push_back(box);
  }
  return map;
}

RegionMap relabel(RegionMap map, WorldState world, const GroupTable& group) {
  for (int& label : map.labels) label = group.mul(world.element, label);
  return map;
}

int point_region(const RegionMap& map, Vec2 point) {
  size_t n = map.arrangement.regions.size();
  for (size_t k = 0; k < n; ++k) {
    if (norm(point - map.poles[k].point) < map.poles[k].radius) return static_cast<int>(k);
  }
  for (size_t k = 0; k < n; ++k) {
    const auto& b = map.bboxes[k];
    if (point.x < b[0] || point.x > b[2] || point.y < b[1] || point.y > b[3]) continue;
    if (inside_even_odd(map.arrangement.regions[k].loops, point)) return static_cast<int>(k);
  }
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < n; ++k) {
    double d = boundary_distance(map.arrangement.regions[k].loops, point);
    if (d < best_d) best = static_cast<int>(k), best_d = d;
  }
  return best;
}

RegionMap region_map(const Camera& camera, const KnotCurve& curve, const PortalSurface& surface,
                     const GroupTable& group, WorldState world) {
  for (int attempt = 0; attempt <= kJitterAttempts; ++attempt) {
    Camera c = camera;
    if (attempt > 0) {
      // Sub-pixel: 1e-3 pixel at the knot's distance.
      double magnitude = 1e-3 * norm(curve.center() - camera.position) / c.focal();
      c.position = jitter_point(camera.position, attempt, magnitude);
    }
    try {
      Arrangement arr = build_arrangement(project_knot(c, curve), c.width, c.height);
      return label_regions(std::move(arr), c, surface, group, world);
    } catch (const GenericityError&) {
      if (attempt == kJitterAttempts) throw;
    }
  }
  throw GenericityError("camera could not be made generic");
}

}  // namespace knotcover
