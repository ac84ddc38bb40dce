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

#include "knotcover/cone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "knotcover/diagram.hpp"
#include "knotcover/error.hpp"
#include "knotcover/geometry.hpp"

namespace knotcover {

namespace {

constexpr double kApexDistanceFactor = 10;
constexpr double kRayTolerance = 1e-9;
constexpr int kApexCandidates = 48;

struct RayHit {
  double s;  // distance factor along the direction to the rim edge
  double u;  // rim edge parameter
};

// Direction `d` from the apex, assumed to lie in the plane of triangle i.
// Returns where the ray meets the rim edge if it passes through the
// triangle's wedge.
std::optional<RayHit> wedge_hit(const Cone& cone, size_t i, Vec3 d) {
  Vec3 a = cone.rim[i] - cone.apex;
  Vec3 b = cone.rim[(i + 1) % cone.rim.size()] - cone.apex;
  Vec3 n = cross(a, b);
  double nn = dot(n, n);
  double alpha = dot(cross(d, b), n) / nn;
  double beta = dot(cross(a, d), n) / nn;
  if (alpha <= 0 || beta <= 0) return std::nullopt;
  return RayHit{1 / (alpha + beta), beta / (alpha + beta)};
}

int sign_of(double x) { return x > 0 ? 1 : -1; }

}  // namespace

Vec3 Cone::normal(size_t i) const {
  return cross(rim[i] - apex, rim[(i + 1) % rim.size()] - apex);
}

Vec3 Cone::rim_point(size_t i, double u) const {
  return lerp(rim[i], rim[(i + 1) % rim.size()], u);
}

Cone build_cone(const KnotCurve& curve, Vec3 apex) {
  double scale = curve.diameter();
  for (size_t i = 0; i < curve.size(); ++i) {
    if (point_segment_distance(apex, curve.point(i), curve.point(i + 1)) <= 1e-9 * scale) {
      throw GeometryError("apex lies on the knot");
    }
  }
  Cone cone{apex, curve.points};
  for (size_t i = 0; i < cone.triangle_count(); ++i) {
    Vec3 a = cone.rim[i] - apex;
    Vec3 b = cone.rim[(i + 1) % cone.rim.size()] - apex;
    if (norm(cross(a, b)) <= 1e-12 * norm(a) * norm(b)) {
      throw GenericityError("apex is collinear with knot segment " + std::to_string(i));
    }
  }
  return cone;
}

ConePieces split_cone(const Cone& cone) {
  size_t n = cone.triangle_count();
  struct RayMark {
    double u;
    double extent;  // 1 for a full cut
  };
  std::vector<std::vector<RayMark>> marks(n);
  ConePieces out;

  std::vector<Vec3> normals(n);
  for (size_t i = 0; i < n; ++i) normals[i] = cone.normal(i);

  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      Vec3 line = cross(normals[i], normals[j]);
      double scale = norm(normals[i]) * norm(normals[j]);
      if (norm(line) <= 1e-12 * scale) {
        throw GenericityError("cone triangles " + std::to_string(i) + " and " + std::to_string(j) +
                              " are coplanar; perturb the apex");
      }
      for (double sigma : {1.0, -1.0}) {
        auto hi = wedge_hit(cone, i, line * sigma);
        if (!hi) continue;
        auto hj = wedge_hit(cone, j, line * sigma);
        if (!hj) continue;
        auto near_end = [](double u) { return u < kRayTolerance || u > 1 - kRayTolerance; };
        if (near_end(hi->u) || near_end(hj->u)) {
          throw GenericityError("self-intersection of the cone passes through a knot vertex; perturb the apex");
        }
        if (std::abs(hi->s - hj->s) <= kRayTolerance * std::max(hi->s, hj->s)) {
          throw GenericityError("knot segments " + std::to_string(i) + " and " + std::to_string(j) +
                                " are aligned with the apex");
        }
        bool i_near = hi->s < hj->s;
        DoubleLine dl;
        dl.near_triangle = static_cast<int>(i_near ? i : j);
        dl.near_u = i_near ? hi->u : hj->u;
        dl.far_triangle = static_cast<int>(i_near ? j : i);
        dl.far_u = i_near ? hj->u : hi->u;
        dl.extent = i_near ? hi->s / hj->s : hj->s / hi->s;
        Vec3 near_point = cone.rim_point(dl.near_triangle, dl.near_u);
        Vec3 near_dir = cone.rim[(dl.near_triangle + 1) % n] - cone.rim[dl.near_triangle];
        Vec3 far_dir = cone.rim[(dl.far_triangle + 1) % n] - cone.rim[dl.far_triangle];
        dl.sign = sign_of(dot(cross(near_dir, far_dir), cone.apex - near_point));
        marks[dl.near_triangle].push_back({dl.near_u, 1});
        marks[dl.far_triangle].push_back({dl.far_u, dl.extent});
        out.double_lines.push_back(dl);
      }
    }
  }

  // Wedges and their connectivity.
  out.wedges_of_triangle.resize(n);
  std::vector<std::pair<int, int>> links;
  for (size_t i = 0; i < n; ++i) {
    auto& m = marks[i];
    std::sort(m.begin(), m.end(), [](const RayMark& a, const RayMark& b) { return a.u < b.u; });
    for (size_t k = 1; k < m.size(); ++k) {
      if (m[k].u - m[k - 1].u <= kRayTolerance) {
        throw GenericityError("two self-intersection lines coincide; perturb the apex");
      }
    }
    double u0 = 0;
    double slit0 = 0;
    for (size_t k = 0; k <= m.size(); ++k) {
      Wedge w;
      w.triangle = static_cast<int>(i);
      w.u0 = u0;
      w.u1 = k < m.size() ? m[k].u : 1;
      w.slit0 = slit0;
      w.slit1 = k < m.size() && m[k].extent < 1 ? m[k].extent : 0;
      int id = static_cast<int>(out.wedges.size());
      out.wedges.push_back(w);
      out.wedges_of_triangle[i].push_back(id);
      if (k > 0 && m[k - 1].extent < 1) links.push_back({id - 1, id});
      if (k < m.size()) {
        u0 = m[k].u;
        slit0 = m[k].extent < 1 ? m[k].extent : 0;
      }
    }
  }
  for (size_t i = 0; i < n; ++i) {
    links.push_back({out.wedges_of_triangle[i].back(), out.wedges_of_triangle[(i + 1) % n].front()});
  }

  std::vector<int> parent(out.wedges.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : links) parent[find(a)] = find(b);

  // Order components by the smallest curve parameter on their rim.
  std::vector<int> roots;
  std::vector<double> first_param;
  for (size_t k = 0; k < out.wedges.size(); ++k) {
    int r = find(static_cast<int>(k));
    double param = out.wedges[k].triangle + out.wedges[k].u0;
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      roots.push_back(r);
      first_param.push_back(param);
    } else {
      double& best = first_param[it - roots.begin()];
      best = std::min(best, param);
    }
  }
  std::vector<int> order(roots.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return first_param[a] < first_param[b]; });
  std::vector<int> piece_of_root(roots.size());
  for (size_t k = 0; k < order.size(); ++k) piece_of_root[order[k]] = static_cast<int>(k);
  out.piece_count = static_cast<int>(roots.size());
  out.piece_area.assign(out.piece_count, 0);
  for (auto& w : out.wedges) {
    int r = find(static_cast<int>(&w - out.wedges.data()));
    w.piece = piece_of_root[std::find(roots.begin(), roots.end(), r) - roots.begin()];
    out.piece_area[w.piece] += (w.u1 - w.u0) * norm(normals[w.triangle]) / 2;
  }

  for (auto& dl : out.double_lines) {
    const auto& ws = out.wedges_of_triangle[dl.near_triangle];
    for (size_t k = 0; k + 1 < ws.size(); ++k) {
      if (out.wedges[ws[k]].u1 == dl.near_u) {
        dl.before_piece = out.wedges[ws[k]].piece;
        dl.after_piece = out.wedges[ws[k + 1]].piece;
      }
    }
    dl.far_piece = out.piece_at(dl.far_triangle, dl.far_u);
  }
  return out;
}

int ConePieces::piece_at(int triangle, double u) const {
  const auto& ws = wedges_of_triangle.at(triangle);
  for (int id : ws) {
    if (u <= wedges[id].u1) return wedges[id].piece;
  }
  return wedges[ws.back()].piece;
}

std::vector<Triangle> ConePieces::piece_mesh(const Cone& cone, int piece) const {
  std::vector<Triangle> mesh;
  for (const Wedge& w : wedges) {
    if (w.piece != piece) continue;
    Vec3 p = cone.apex;
    Vec3 e0 = cone.rim_point(w.triangle, w.u0);
    Vec3 e1 = cone.rim_point(w.triangle, w.u1);
    if (w.slit0 > 0 && w.slit1 > 0) {
      Vec3 s0 = lerp(p, e0, w.slit0);
      Vec3 s1 = lerp(p, e1, w.slit1);
      mesh.push_back({s0, e0, e1});
      mesh.push_back({s0, e1, s1});
      mesh.push_back({p, s0, s1});
    } else if (w.slit0 > 0) {
      Vec3 s0 = lerp(p, e0, w.slit0);
      mesh.push_back({s0, e0, e1});
      mesh.push_back({p, s0, e1});
    } else if (w.slit1 > 0) {
      Vec3 s1 = lerp(p, e1, w.slit1);
      mesh.push_back({p, e0, s1});
      mesh.push_back({s1, e0, e1});
    } else {
      mesh.push_back({p, e0, e1});
    }
  }
  return mesh;
}

bool apex_is_generic(const KnotCurve& curve, Vec3 apex) {
  try {
    Cone cone = build_cone(curve, apex);
    ConePieces pieces = split_cone(cone);
    Diagram d = project_and_cross(curve, Projection::central(apex, curve.center(), false));
    int arcs = static_cast<int>(d.arcs.size());
    return pieces.piece_count == std::max(arcs, 1);
  } catch (const GeometryError&) {
    return false;
  }
}

Vec3 choose_apex(const KnotCurve& curve, std::optional<Vec3> hint) {
  if (hint && apex_is_generic(curve, *hint)) return *hint;
  Vec3 center = curve.center();
  double distance = kApexDistanceFactor * curve.diameter();
  // Directions spiral away from +z, slightly off-axis to avoid the
  // symmetries of the builtin parametrizations.
  for (int k = 0; k < kApexCandidates; ++k) {
    double tilt = 0.02 + 0.015 * k;
    double azimuth = 0.7 + k * std::numbers::pi * (3 - std::sqrt(5.0));
    Vec3 dir{std::sin(tilt) * std::cos(azimuth), std::sin(tilt) * std::sin(azimuth), std::cos(tilt)};
    Vec3 apex = center + dir * distance;
    if (apex_is_generic(curve, apex)) return apex;
  }
  throw GeometryError("no generic apex found");
}

std::vector<ConeSegment> assign_generators(const Cone& cone, const ConePieces& pieces,
                                           const std::vector<std::string>& gen_to_cone,
                                           const GroupTable& group) {
  if (static_cast<int>(gen_to_cone.size()) != pieces.piece_count) {
    throw GeometryError("generator-to-cone map has " + std::to_string(gen_to_cone.size()) +
                        " entries but the cone has " + std::to_string(pieces.piece_count) + " segments");
  }
  std::vector<ConeSegment> out;
  for (int k = 0; k < pieces.piece_count; ++k) {
    ConeSegment seg;
    seg.id = k;
    seg.generator_name = gen_to_cone[k];
    auto it = std::find(group.generator_names.begin(), group.generator_names.end(), gen_to_cone[k]);
    if (it == group.generator_names.end()) {
      throw GeometryError("'" + gen_to_cone[k] + "' is not a generator of the group");
    }
    seg.generator = group.generator_images[it - group.generator_names.begin()];
    seg.inverse = group.inverse[seg.generator];
    seg.mesh = pieces.piece_mesh(cone, k);
    out.push_back(std::move(seg));
  }
  return out;
}

std::vector<std::string> check_labeling(const ConePieces& pieces,
                                        const std::vector<ConeSegment>& segments,
                                        const GroupTable& group) {
  std::vector<std::string> out;
  for (const DoubleLine& dl : pieces.double_lines) {
    int before = segments.at(dl.before_piece).generator;
    int after = segments.at(dl.after_piece).generator;
    int far = segments.at(dl.far_piece).generator;
    int far_inv = group.inverse[far];
    int expected = dl.sign > 0 ? group.mul(group.mul(far, before), far_inv)
                               : group.mul(group.mul(far_inv, before), far);
    if (expected != after) {
      out.push_back("double line at segment " + std::to_string(dl.near_triangle) + ": segment " +
                    std::to_string(dl.after_piece) + " is labeled " + group.names[after] + " but crossing under segment " +
                    std::to_string(dl.far_piece) + " requires " + group.names[expected]);
    }
  }
  return out;
}

}  // namespace knotcover
