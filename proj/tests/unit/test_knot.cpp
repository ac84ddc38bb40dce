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
#include <numbers>
#include <utility>

#include "knotcover/error.hpp"
#include "knotcover/knot.hpp"
#include "knotcover/scene.hpp"
#include "oracles.hpp"

using namespace knotcover;

namespace {

constexpr double kPi = std::numbers::pi;

void check_close(Vec3 a, Vec3 b, double tol = 1e-12) {
  CHECK(a.x == doctest::Approx(b.x).epsilon(tol));
  CHECK(a.y == doctest::Approx(b.y).epsilon(tol));
  CHECK(a.z == doctest::Approx(b.z).epsilon(tol));
}

}  // namespace

TEST_CASE("builtin knots evaluate to their closed-form coordinates") {
  for (double t : {0.0, 0.3, 1.7, 4.0}) {
    check_close(builtin_knot("unknot").evaluate(t), {0.8 * std::sin(t), 1.5 * std::cos(t), 0});
    check_close(builtin_knot("twisted-unknot").evaluate(t),
                {2 * std::sin(t + 1), 3 * std::sin(t + 1) * std::cos(t + 1), std::sin(t)});
    check_close(builtin_knot("trefoil").evaluate(t),
                {std::sin(t) + 2 * std::sin(2 * t), std::cos(t) - 2 * std::cos(2 * t), -std::sin(3 * t)});
    double r8 = 2 + std::cos(2 * t);
    check_close(builtin_knot("figure-eight").evaluate(t), {r8 * std::cos(3 * t), r8 * std::sin(3 * t), std::sin(4 * t)});
    double r5 = 3 + std::cos(5 * t);
    check_close(builtin_knot("solomon").evaluate(t), {r5 * std::cos(2 * t), r5 * std::sin(2 * t), std::sin(5 * t)});
  }
}

TEST_CASE("sampling spaces parameters evenly and closes the curve") {
  KnotCurve c = sample_parametric(builtin_knot("trefoil"), 64);
  REQUIRE(c.size() == 64);
  check_close(c.points[0], {0, -1, 0});
  check_close(c.points[16], builtin_knot("trefoil").evaluate(kPi / 2));
  CHECK(c.point(64) == c.points[0]);
  check_close(c.at(2.5), (c.points[2] + c.points[3]) * 0.5);
  CHECK_THROWS_AS(sample_parametric(builtin_knot("trefoil"), 8), GeometryError);
}

TEST_CASE("every builtin knot samples to a simple closed polyline") {
  for (const auto& name : builtin_knot_names()) {
    CAPTURE(name);
    KnotCurve c = sample_parametric(builtin_knot(name), 256);
    CHECK_NOTHROW(check_simple(c));
    CHECK(min_self_distance(c) > 0.05 * c.diameter());
    CHECK(min_nonadjacent_distance(c) > 0);
  }
}

TEST_CASE("diameter and length agree with direct computation") {
  KnotCurve c = sample_parametric(builtin_knot("unknot"), 512);
  CHECK(c.diameter() == doctest::Approx(3.0).epsilon(1e-4));
  // Ellipse perimeter, Ramanujan's second approximation.
  double a = 1.5, b = 0.8, h = (a - b) * (a - b) / ((a + b) * (a + b));
  double perimeter = kPi * (a + b) * (1 + 3 * h / (10 + std::sqrt(4 - 3 * h)));
  CHECK(c.length() == doctest::Approx(perimeter).epsilon(1e-4));
  check_close(c.center(), {0, 0, 0}, 1e-9);
}

TEST_CASE("non-integer frequencies and self-intersections are rejected") {
  ParametricKnot open;
  open.terms[0] = {{1, 1.5, 0}};
  open.terms[1] = {{1, 1, kPi / 2}};
  CHECK_THROWS_AS(sample_parametric(open, 64), GeometryError);

  ParametricKnot figure_eight_curve;  // planar lemniscate crosses itself
  figure_eight_curve.terms[0] = {{1, 1, 0}};
  figure_eight_curve.terms[1] = {{1, 2, 0}};
  CHECK_THROWS_AS(sample_parametric(figure_eight_curve, 64), GeometryError);
}

TEST_CASE("Catmull-Rom passes through its control points") {
  std::vector<Vec3> square = {{0, 0, 0}, {1, 0, 0.2}, {1, 1, 0}, {0, 1, 0.2}};
  KnotCurve c = catmull_rom(square, 8);
  REQUIRE(c.size() == 32);
  for (size_t i = 0; i < square.size(); ++i) CHECK(c.points[i * 8] == square[i]);
  CHECK(c.source == CurveSource::kControlPoints);
}

TEST_CASE("Catmull-Rom through points of a circle stays near the circle") {
  std::vector<Vec3> control;
  for (int k = 0; k < 12; ++k) control.push_back({std::cos(2 * kPi * k / 12), std::sin(2 * kPi * k / 12), 0});
  KnotCurve c = catmull_rom(control, 16);
  for (const Vec3& p : c.points) CHECK(std::hypot(p.x, p.y) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("Catmull-Rom rejects too few or coincident control points") {
  std::vector<Vec3> three = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  CHECK_THROWS_AS(catmull_rom(three, 4), GeometryError);
  std::vector<Vec3> repeated = {{0, 0, 0}, {1, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  CHECK_THROWS_AS(catmull_rom(repeated, 4), GeometryError);
}

TEST_CASE("tube mesh is a closed torus around the curve") {
  for (const char* name : {"unknot", "trefoil", "figure-eight"}) {
    CAPTURE(name);
    KnotCurve c = sample_parametric(builtin_knot(name), 128);
    double r = 0.05 * c.diameter();
    const int ring = 10;
    TubeMesh m = tube_mesh(c, r, ring);
    CHECK(m.vertices.size() == c.size() * ring);
    CHECK(m.normals.size() == m.vertices.size());

    std::map<std::pair<uint32_t, uint32_t>, int> edges;
    for (const auto& t : m.triangles) {
      for (int k = 0; k < 3; ++k) {
        uint32_t a = t[k], b = t[(k + 1) % 3];
        edges[{std::min(a, b), std::max(a, b)}]++;
      }
    }
    bool manifold = true;
    for (const auto& [e, n] : edges) manifold = manifold && n == 2;
    CHECK(manifold);
    long v = static_cast<long>(m.vertices.size()), e = static_cast<long>(edges.size());
    long f = static_cast<long>(m.triangles.size());
    CHECK(v - e + f == 0);

    for (size_t i = 0; i < c.size(); ++i) {
      for (int j = 0; j < ring; ++j) {
        const Vec3& p = m.vertices[i * ring + j];
        CHECK(norm(p - c.points[i]) == doctest::Approx(r).epsilon(1e-9));
        CHECK(std::abs(dot(m.normals[i * ring + j], p - c.points[i]) - r) < 1e-9);
      }
    }
  }
}

TEST_CASE("tube radius must fit inside the curve") {
  KnotCurve c = sample_parametric(builtin_knot("trefoil"), 128);
  CHECK_THROWS_AS(tube_mesh(c, 0, 8), GeometryError);
  CHECK_THROWS_AS(tube_mesh(c, min_self_distance(c), 8), GeometryError);
  CHECK_THROWS_AS(tube_mesh(c, 0.01, 2), GeometryError);
}

TEST_CASE("segment distances agree with a sampled reference") {
  KnotCurve c = sample_parametric(builtin_knot("figure-eight"), 96);
  double ref = INFINITY;
  const size_t n = c.size();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      ref = std::min(ref, oracle::dist_segment_segment(c.point(i), c.point(i + 1), c.point(j), c.point(j + 1)));
    }
  }
  CHECK(min_nonadjacent_distance(c) == doctest::Approx(ref).epsilon(1e-6));
}
