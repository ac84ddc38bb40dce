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

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "knotcover/error.hpp"
#include "knotcover/service.hpp"
#include "knotcover/session.hpp"

using namespace knotcover;

namespace {

Vec3 parse_vec3(const std::string& text) {
  Vec3 v;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> v.x >> c1 >> v.y >> c2 >> v.z) || c1 != ',' || c2 != ',') {
    throw Error("expected x,y,z but got '" + text + "'");
  }
  return v;
}

std::pair<int, int> parse_size(const std::string& text) {
  int w = 0, h = 0;
  char x = 0;
  std::istringstream in(text);
  if (!(in >> w >> x >> h) || x != 'x' || w <= 0 || h <= 0) throw Error("expected WxH but got '" + text + "'");
  return {w, h};
}

std::vector<Vec3> read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::vector<Vec3> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_vec3(line));
  }
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  return out;
}

const Universe& require_geometry(const Universe& u) {
  if (!u.has_geometry()) throw GeometryError("scene '" + u.spec.name + "' has no knot geometry");
  return u;
}

int cmd_validate(const std::string& scene) {
  Universe u = build_universe(load_scene(scene));
  std::printf("scene %s\n", u.spec.name.c_str());
  std::printf("group order %d (%s)\n", u.group.order(), identify(u.group).c_str());
  if (u.has_geometry()) {
    const PortalSurface& s = *u.surface;
    std::printf("curve %zu points, diameter %.6g\n", u.curve->size(), s.scale);
    std::printf("apex %.6g %.6g %.6g\n", s.cone.apex.x, s.cone.apex.y, s.cone.apex.z);
    std::printf("cone segments %d, double lines %zu\n", s.pieces.piece_count, s.pieces.double_lines.size());
  } else {
    std::printf("group only (no geometry)\n");
  }
  for (const auto& v : u.labeling_violations) std::printf("violation: %s\n", v.c_str());
  if (!u.labeling_violations.empty()) return 2;
  std::printf("ok\n");
  return 0;
}

int cmd_knot(const std::string& scene, const std::string& csv, const std::string& tube) {
  SceneSpec spec = load_scene(scene);
  KnotCurve curve = scene_curve(spec);
  std::printf("%zu points, diameter %.6g, length %.6g, min self distance %.6g\n", curve.size(), curve.diameter(),
              curve.length(), min_self_distance(curve));
  if (!csv.empty()) {
    auto out = open_out(csv);
    out.precision(17);
    for (const Vec3& p : curve.points) out << p.x << ',' << p.y << ',' << p.z << '\n';
  }
  if (!tube.empty()) {
    TubeMesh mesh = tube_mesh(curve, spec.tube_radius * curve.diameter(), 12);
    auto out = open_out(tube);
    out.precision(17);
    for (const Vec3& v : mesh.vertices) out << "v " << v.x << ' ' << v.y << ' ' << v.z << '\n';
    for (const Vec3& n : mesh.normals) out << "vn " << n.x << ' ' << n.y << ' ' << n.z << '\n';
    for (const auto& t : mesh.triangles) {
      out << "f";
      for (uint32_t i : t) out << ' ' << i + 1 << "//" << i + 1;
      out << '\n';
    }
  }
  return 0;
}

int cmd_wirtinger(const std::string& scene, const std::string& view) {
  Universe u = build_universe(load_scene(scene));
  require_geometry(u);
  Diagram d = view.empty() ? *u.apex_diagram : project_and_cross(*u.curve, Projection::orthographic(parse_vec3(view)));
  Presentation p = wirtinger(d);
  std::printf("crossings %zu\n", d.crossings.size());
  std::printf("generators");
  for (const auto& g : p.generators) std::printf(" %s", g.c_str());
  std::printf("\n");
  for (const Word& r : p.relators) std::printf("relator %s\n", format_word(r, p.generators).c_str());
  AbelianInvariants ab = abelianize(p);
  std::printf("abelianization free rank %d, torsion", ab.free_rank);
  for (auto t : ab.torsion) std::printf(" %lld", static_cast<long long>(t));
  std::printf("\n");
  return 0;
}

int cmd_group(const std::string& scene, const std::string& compare) {
  Universe u = build_universe(load_scene(scene));
  const GroupTable& g = u.group;
  std::printf("order %d\nidentification %s\n", g.order(), identify(g).c_str());
  std::printf("%s", format_table(g).c_str());
  auto violations = validate(g);
  for (const auto& v : violations) std::printf("violation: %s\n", v.c_str());
  if (!compare.empty()) {
    std::ifstream in(compare);
    if (!in) throw Error("cannot read " + compare);
    std::ostringstream buf;
    buf << in.rdbuf();
    ParsedTable printed = parse_table(buf.str());
    for (const auto& v : printed.violations) std::printf("printed table: %s\n", v.c_str());
    FixtureComparison cmp = compare_tables(printed.table, g);
    std::printf("comparison: %s, %d mismatching cells\n", cmp.transposed ? "transposed" : "as printed",
                cmp.mismatches);
    for (size_t k = 0; k < cmp.mapping.size(); ++k) {
      std::printf("  %s -> %s\n", printed.table.names[k].c_str(), g.names[cmp.mapping[k]].c_str());
    }
    for (const auto& a : cmp.annotations) std::printf("annotation: %s\n", a.c_str());
  }
  return violations.empty() ? 0 : 1;
}

int cmd_cone(const std::string& scene, const std::string& dump) {
  Universe u = build_universe(load_scene(scene));
  const PortalSurface& s = *require_geometry(u).surface;
  std::printf("apex %.6g %.6g %.6g\n", s.cone.apex.x, s.cone.apex.y, s.cone.apex.z);
  std::printf("triangles %zu, segments %d\n", s.cone.triangle_count(), s.pieces.piece_count);
  for (const ConeSegment& seg : s.segments) {
    std::printf("segment %d: generator %s, area %.6g\n", seg.id, seg.generator_name.c_str(),
                s.pieces.piece_area[seg.id]);
  }
  for (const DoubleLine& dl : s.pieces.double_lines) {
    std::printf("double line: cuts segment %d into %d | %d under segment %d, sign %+d\n", dl.near_triangle,
                dl.before_piece, dl.after_piece, dl.far_piece, dl.sign);
  }
  if (!dump.empty()) {
    auto out = open_out(dump);
    out.precision(17);
    size_t base = 1;
    for (const ConeSegment& seg : s.segments) {
      out << "# segment " << seg.id << " generator " << seg.generator_name << " inverse "
          << u.group.names[seg.inverse] << "\n";
      out << "g segment_" << seg.id << "_" << seg.generator_name << "\n";
      for (const Triangle& t : seg.mesh) {
        for (const Vec3& v : t) out << "v " << v.x << ' ' << v.y << ' ' << v.z << '\n';
      }
      for (size_t k = 0; k < seg.mesh.size(); ++k, base += 3) {
        out << "f " << base << ' ' << base + 1 << ' ' << base + 2 << '\n';
      }
    }
  }
  return 0;
}

int cmd_transport(const std::string& scene, const std::string& path, const std::string& start) {
  Universe u = build_universe(load_scene(scene));
  require_geometry(u);
  std::vector<Vec3> points = read_points(path);
  WorldState w{u.world(start)};
  PathTransport r = transport_path(w, points, *u.surface, u.group);
  WorldState cur = w;
  for (const CrossingEvent& e : r.events) {
    cur.element = u.group.mul(cur.element, e.applied);
    std::printf("t %.6f segment %d %s applies %s -> %s\n", e.t, e.segment,
                e.direction > 0 ? "front-to-back" : "back-to-front", u.group.names[e.applied].c_str(),
                u.group.names[cur.element].c_str());
  }
  std::printf("final %s\n", u.group.names[r.state.element].c_str());
  return 0;
}

Camera make_camera(const Universe& u, const std::string& pos, const std::string& look, const std::string& size) {
  auto [w, h] = parse_size(size);
  if (pos.empty()) {
    Camera c = pose_camera(default_pose(u), w, h);
    if (!look.empty()) c.forward = parse_vec3(look) - c.position;
    return c;
  }
  Vec3 target = look.empty() ? u.curve->center() : parse_vec3(look);
  return Camera::look_at(parse_vec3(pos), target, w, h);
}

int cmd_render(const std::string& scene, const std::string& pos, const std::string& look, const std::string& world,
               const std::string& size, const std::string& output, bool brute) {
  Universe u = build_universe(load_scene(scene));
  require_geometry(u);
  Camera cam = make_camera(u, pos, look, size);
  WorldState w{u.world(world)};
  Frame f = brute ? render_brute(cam, *u.curve, *u.surface, u.group, u.colors, w) : render_view(u, cam, w);
  write_ppm(output, f);
  return 0;
}

int cmd_frame(const std::string& scene, const std::string& pos, const std::string& look, const std::string& world,
              const std::string& size) {
  auto u = std::make_shared<const Universe>(build_universe(load_scene(scene)));
  require_geometry(*u);
  auto [w, h] = parse_size(size);
  Session session(u, w, h);
  FrameState f = session.frame();
  if (!pos.empty() || !look.empty() || world != "e") {
    Camera cam = make_camera(*u, pos, look, size);
    WorldState ws{u->world(world)};
    RegionMap map = view_regions(*u, cam, ws);
    f.world = world;
    f.pose.position = cam.position;
    Vec3 fw = cam.unit_forward();
    f.pose.yaw = std::atan2(fw.x, fw.z);
    f.pose.pitch = std::asin(fw.y);
    f.knot.clear();
    for (const ScreenSegment& s : project_knot(cam, *u->curve)) f.knot.push_back({s.a.x, s.a.y, s.b.x, s.b.y});
    f.regions.clear();
    for (size_t k = 0; k < map.arrangement.regions.size(); ++k) {
      f.regions.push_back({static_cast<int>(k), map.arrangement.regions[k].loops, u->world_name(map.labels[k]),
                           u->colors[map.labels[k]], map.poles[k].point, map.poles[k].radius, map.bboxes[k]});
    }
  }
  std::printf("%s\n", to_json(f).c_str());
  return 0;
}

int cmd_serve(const std::string& host, int port) {
  EngineService service;
  int bound = service.bind(host, port);
  std::printf("listening on http://%s:%d\n", host.c_str(), bound);
  std::fflush(stdout);
  service.listen();
  return 0;
}

int cmd_scenes(const std::string& dir) {
  for (const SceneSpec& s : builtin_scenes()) {
    std::printf("%s%s\n", s.name.c_str(), s.group_only() ? " (group only)" : "");
    if (!dir.empty()) {
      auto out = open_out(dir + "/" + s.name + ".json");
      out << serialize_scene(s);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"knotcover: knots as portals between worlds"};
  app.require_subcommand(1);

  std::string scene, csv, tube, view, compare, dump, path, start = "e";
  std::string pos, look, world = "e", size = "640x480", output, host = "127.0.0.1", dir;
  bool brute = false;
  int port = 8765;

  auto* validate_cmd = app.add_subcommand("validate", "Build a scene and report its group and cone");
  validate_cmd->add_option("scene", scene, "Scene file or builtin name")->required();

  auto* knot_cmd = app.add_subcommand("knot", "Sample the knot curve");
  knot_cmd->add_option("scene", scene, "Scene file or builtin name")->required();
  knot_cmd->add_option("--dump-curve", csv, "Write points as x,y,z lines");
  knot_cmd->add_option("--tube", tube, "Write the tube mesh as OBJ");

  auto* wirt_cmd = app.add_subcommand("wirtinger", "Print the Wirtinger presentation");
  wirt_cmd->add_option("scene", scene, "Scene file or builtin name")->required();
  wirt_cmd->add_option("--view", view, "Orthographic view direction x,y,z (default: seen from the apex)");

  auto* group_cmd = app.add_subcommand("group", "Print the deck group table");
  group_cmd->add_option("scene", scene, "Scene file or builtin name")->required();
  group_cmd->add_option("--compare", compare, "Compare with a printed letter table");

  auto* cone_cmd = app.add_subcommand("cone", "Print the cut cone");
  cone_cmd->add_option("scene", scene, "Scene file or builtin name")->required();
  cone_cmd->add_option("--dump", dump, "Write segments as OBJ groups");

  auto* transport_cmd = app.add_subcommand("transport", "Transport a world along a path");
  transport_cmd->add_option("scene", scene, "Scene file or builtin name")->required();
  transport_cmd->add_option("--path", path, "File with one x,y,z vertex per line")->required();
  transport_cmd->add_option("--start", start, "Starting world");

  auto* render_cmd = app.add_subcommand("render", "Render a frame to PPM");
  render_cmd->add_option("scene", scene, "Scene file or builtin name")->required();
  render_cmd->add_option("--pos", pos, "Camera position x,y,z");
  render_cmd->add_option("--look", look, "Point to look at x,y,z");
  render_cmd->add_option("--world", world, "World the camera is in");
  render_cmd->add_option("--size", size, "WxH");
  render_cmd->add_option("-o,--output", output, "Output .ppm")->required();
  render_cmd->add_flag("--brute", brute, "Per-pixel raycast instead of screen regions");

  auto* frame_cmd = app.add_subcommand("frame", "Print a FrameState message");
  frame_cmd->add_option("scene", scene, "Scene file or builtin name")->required();
  frame_cmd->add_option("--pos", pos, "Camera position x,y,z");
  frame_cmd->add_option("--look", look, "Point to look at x,y,z");
  frame_cmd->add_option("--world", world, "World the camera is in");
  frame_cmd->add_option("--size", size, "WxH");

  auto* serve_cmd = app.add_subcommand("serve", "Run the local engine service");
  serve_cmd->add_option("--host", host, "Address to bind");
  serve_cmd->add_option("--port", port, "Port (0 picks a free one)");

  auto* scenes_cmd = app.add_subcommand("scenes", "List builtin scenes");
  scenes_cmd->add_option("--write", dir, "Write them as JSON files into a directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate_cmd) return cmd_validate(scene);
    if (*knot_cmd) return cmd_knot(scene, csv, tube);
    if (*wirt_cmd) return cmd_wirtinger(scene, view);
    if (*group_cmd) return cmd_group(scene, compare);
    if (*cone_cmd) return cmd_cone(scene, dump);
    if (*transport_cmd) return cmd_transport(scene, path, start);
    if (*render_cmd) return cmd_render(scene, pos, look, world, size, output, brute);
    if (*frame_cmd) return cmd_frame(scene, pos, look, world, size);
    if (*serve_cmd) return cmd_serve(host, port);
    if (*scenes_cmd) return cmd_scenes(dir);
  } catch (const SceneError& e) {
    std::fprintf(stderr, "scene error: %s\n", e.what());
    return 2;
  } catch (const GeometryError& e) {
    std::fprintf(stderr, "geometry error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
