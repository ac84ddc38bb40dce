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

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "knotcover/error.hpp"
#include "knotcover/regions.hpp"
#include "knotcover/scene.hpp"
#include "knotcover/session.hpp"
#include "knotcover/universe.hpp"
#include "oracles.hpp"

using namespace knotcover;

namespace {

const Universe& universe(const std::string& name) {
  static std::map<std::string, Universe> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, build_universe(builtin_scene(name))).first;
  return it->second;
}

Camera z_camera(const Universe& u, int w = 320, int h = 240) { return pose_camera(default_pose(u), w, h); }

double total_area(const Arrangement& a) {
  double s = 0;
  for (const Region& r : a.regions) s += r.area;
  return s;
}

std::vector<std::vector<Vec2>> rect(double x0, double y0, double x1, double y1) {
  return {{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

}  // namespace

TEST_CASE("camera projection inverts ray directions") {
  Camera c = Camera::look_at({1, 2, -5}, {0, 0, 0}, 320, 240);
  for (Vec2 s : {Vec2{0, 0}, Vec2{160, 120}, Vec2{319.5, 10.25}}) {
    Vec2 back = c.project(c.position + c.ray_direction(s) * 3.0);
    CHECK(back.x == doctest::Approx(s.x));
    CHECK(back.y == doctest::Approx(s.y));
  }
  Vec2 center = c.project({0, 0, 0});
  CHECK(center.x == doctest::Approx(160));
  CHECK(center.y == doctest::Approx(120));
  CHECK(c.focal() == doctest::Approx(120 / std::tan(std::numbers::pi / 6)));
  Camera up_camera = c;
  Vec2 above = c.project(c.position + c.unit_forward() * 5.0 + c.unit_up());
  CHECK(above.y < 120);
  Vec2 right = up_camera.project(c.position + c.unit_forward() * 5.0 + c.right());
  CHECK(right.x > 160);
}

TEST_CASE("knot behind the camera projects to nothing") {
  const Universe& u = universe("trefoil");
  Camera c = z_camera(u);
  c.forward = {0, 0, -1};
  CHECK(project_knot(c, *u.curve).empty());
  Arrangement a = build_arrangement({}, 320, 240);
  REQUIRE(a.regions.size() == 1);
  CHECK(a.regions[0].area == doctest::Approx(320 * 240));
  RegionMap m = region_map(c, *u.curve, *u.surface, u.group, WorldState{3});
  REQUIRE(m.labels.size() == 1);
  CHECK(m.labels[0] == 3);
}

TEST_CASE("region counts of z-axis views") {
  struct Case {
    const char* name;
    size_t regions;
  };
  for (Case k : {Case{"unknot", 2}, Case{"twisted-unknot", 3}, Case{"trefoil", 5}, Case{"figure-eight", 6},
                 Case{"solomon", 7}}) {
    CAPTURE(k.name);
    const Universe& u = universe(k.name);
    Camera c = z_camera(u);
    Arrangement a = build_arrangement(project_knot(c, *u.curve), c.width, c.height);
    CHECK(a.regions.size() == k.regions);
    CHECK(total_area(a) == doctest::Approx(320.0 * 240.0).epsilon(1e-9));
    for (const RegionAdjacency& adj : a.adjacency) CHECK(adj.left != adj.right);
    std::vector<Vec2> poly;
    for (const ScreenSegment& s : project_knot(c, *u.curve)) poly.push_back(s.a);
    CHECK(a.regions.size() == static_cast<size_t>(oracle::brute_crossing_count(poly)) + 2);
  }
}

TEST_CASE("areas tile the screen for partially visible knots") {
  const Universe& u = universe("figure-eight");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-1, 1);
  for (int k = 0; k < 8; ++k) {
    Vec3 pos = u.curve->center() + normalized(Vec3{d(rng), d(rng), d(rng)}) * (0.6 * u.diameter());
    Vec3 target = u.curve->center() + Vec3{d(rng), d(rng), d(rng)} * (0.5 * u.diameter());
    Camera c = Camera::look_at(pos, target, 200, 150);
    RegionMap m = region_map(c, *u.curve, *u.surface, u.group, WorldState{});
    CHECK(total_area(m.arrangement) == doctest::Approx(200.0 * 150.0).epsilon(1e-9));
    for (const Region& r : m.arrangement.regions) CHECK(r.area > 0);
  }
}

TEST_CASE("pole of inaccessibility of simple shapes") {
  Pole sq = pole_of_inaccessibility(rect(0, 0, 10, 10), 0.01);
  CHECK(sq.point.x == doctest::Approx(5).epsilon(0.01));
  CHECK(sq.point.y == doctest::Approx(5).epsilon(0.01));
  CHECK(sq.radius == doctest::Approx(5).epsilon(0.01));

  Pole r = pole_of_inaccessibility(rect(0, 0, 20, 10), 0.01);
  CHECK(r.radius == doctest::Approx(5).epsilon(0.01));
  CHECK(r.point.y == doctest::Approx(5).epsilon(0.01));

  std::vector<std::vector<Vec2>> ell = {{{0, 0}, {10, 0}, {10, 3}, {3, 3}, {3, 10}, {0, 10}}};
  Pole l = pole_of_inaccessibility(ell);
  double ref = oracle::grid_pole_radius(ell, 0.05);
  CHECK(l.radius >= ref - 0.1 - 0.05);
  CHECK(l.radius <= ref + 0.05);
  CHECK(oracle::inside_by_winding(ell, l.point));

  auto ring = rect(0, 0, 10, 10);
  ring.push_back({{3, 3}, {3, 7}, {7, 7}, {7, 3}});
  Pole hole = pole_of_inaccessibility(ring, 0.01);
  CHECK(hole.radius == doctest::Approx(oracle::grid_pole_radius(ring, 0.02)).epsilon(0.02));
  CHECK(oracle::inside_by_winding(ring, hole.point));

  CHECK_THROWS_AS(pole_of_inaccessibility({{{0, 0}, {1, 1}, {2, 2}}}), GeometryError);
}

TEST_CASE("poles lie inside their regions") {
  const Universe& u = universe("trefoil");
  Camera c = z_camera(u);
  RegionMap m = region_map(c, *u.curve, *u.surface, u.group, WorldState{});
  for (size_t k = 0; k < m.poles.size(); ++k) {
    const auto& loops = m.arrangement.regions[k].loops;
    CHECK(oracle::inside_by_winding(loops, m.poles[k].point));
    CHECK(m.poles[k].radius == doctest::Approx(oracle::boundary_distance(loops, m.poles[k].point)).epsilon(1e-6));
    CHECK(point_region(m, m.poles[k].point) == static_cast<int>(k));
  }
}

TEST_CASE("point lookup agrees with winding-number containment on a grid") {
  for (const char* name : {"trefoil", "figure-eight"}) {
    CAPTURE(name);
    const Universe& u = universe(name);
    Camera c = z_camera(u, 320, 240);
    RegionMap m = region_map(c, *u.curve, *u.surface, u.group, WorldState{});
    int mismatches = 0, tested = 0;
    for (int j = 0; j < 64; ++j) {
      for (int i = 0; i < 64; ++i) {
        Vec2 p{(i + 0.5) * 320 / 64, (j + 0.5) * 240 / 64};
        int expected = -1, owners = 0;
        bool near_edge = false;
        for (size_t k = 0; k < m.arrangement.regions.size(); ++k) {
          const auto& loops = m.arrangement.regions[k].loops;
          if (oracle::boundary_distance(loops, p) < 1e-6) near_edge = true;
          if (oracle::inside_by_winding(loops, p)) {
            expected = static_cast<int>(k);
            ++owners;
          }
        }
        if (near_edge) continue;
        ++tested;
        CHECK(owners == 1);
        if (point_region(m, p) != expected) ++mismatches;
      }
    }
    CHECK(tested > 4000);
    CHECK(mismatches == 0);
  }
}

TEST_CASE("each region shows one world along every ray") {
  for (const char* name : {"unknot", "trefoil", "figure-eight"}) {
    CAPTURE(name);
    const Universe& u = universe(name);
    Camera c = z_camera(u);
    RegionMap m = region_map(c, *u.curve, *u.surface, u.group, WorldState{});
    std::mt19937_64 rng(17);
    for (size_t k = 0; k < m.arrangement.regions.size(); ++k) {
      const auto& loops = m.arrangement.regions[k].loops;
      const auto& bb = m.bboxes[k];
      std::uniform_real_distribution<double> x(bb[0], bb[2]), y(bb[1], bb[3]);
      int found = 0;
      for (int tries = 0; tries < 2000 && found < 5; ++tries) {
        Vec2 p{x(rng), y(rng)};
        if (!oracle::inside_by_winding(loops, p) || oracle::boundary_distance(loops, p) < 1) continue;
        ++found;
        CHECK(ray_world(c, p, *u.surface, u.group, WorldState{}, 0.25) == m.labels[k]);
      }
      CHECK(found == 5);
    }
  }
}

TEST_CASE("the unknot shows the other world inside and this one outside") {
  const Universe& u = universe("unknot");
  Camera c = z_camera(u);
  RegionMap m = region_map(c, *u.curve, *u.surface, u.group, WorldState{});
  int inside = point_region(m, c.project(u.curve->center()));
  int outside = point_region(m, {1, 1});
  CHECK(m.labels[outside] == u.group.identity);
  CHECK(m.labels[inside] == u.group.element("a"));
}

TEST_CASE("labels from another world are left translates") {
  for (const char* name : {"trefoil", "figure-eight"}) {
    CAPTURE(name);
    const Universe& u = universe(name);
    Camera c = z_camera(u);
    Arrangement a = build_arrangement(project_knot(c, *u.curve), c.width, c.height);
    RegionMap base = label_regions(a, c, *u.surface, u.group, WorldState{});
    for (int w = 0; w < u.group.order(); ++w) {
      RegionMap direct = label_regions(a, c, *u.surface, u.group, WorldState{w});
      RegionMap moved = relabel(base, WorldState{w}, u.group);
      CHECK(direct.labels == moved.labels);
      for (size_t k = 0; k < base.labels.size(); ++k) CHECK(moved.labels[k] == u.group.mul(w, base.labels[k]));
    }
  }
}

TEST_CASE("overlapping segments are not generic") {
  std::vector<ScreenSegment> segs(2);
  segs[0] = {{10, 10}, {50, 10}, 1, 1, 0};
  segs[1] = {{30, 10}, {70, 10}, 1, 1, 5};
  CHECK_THROWS_AS(build_arrangement(segs, 100, 100), GenericityError);
}

TEST_CASE("a square splits the screen into inside and outside") {
  std::vector<ScreenSegment> segs = {
      {{20, 20}, {60, 20}, 1, 1, 0}, {{60, 20}, {60, 60}, 1, 1, 1}, {{60, 60}, {20, 60}, 1, 1, 2}, {{20, 60}, {20, 20}, 1, 1, 3}};
  Arrangement a = build_arrangement(segs, 100, 100);
  REQUIRE(a.regions.size() == 2);
  std::vector<double> areas = {a.regions[0].area, a.regions[1].area};
  std::sort(areas.begin(), areas.end());
  CHECK(areas[0] == doctest::Approx(1600));
  CHECK(areas[1] == doctest::Approx(8400));
  CHECK(a.adjacency.size() == 4);
}
