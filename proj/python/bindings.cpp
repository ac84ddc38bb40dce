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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "knotcover/error.hpp"
#include "knotcover/protocol.hpp"
#include "knotcover/render.hpp"
#include "knotcover/scene.hpp"
#include "knotcover/session.hpp"
#include "knotcover/transport.hpp"
#include "knotcover/universe.hpp"

namespace py = pybind11;
using namespace knotcover;

namespace {

using Triple = std::array<double, 3>;

Vec3 vec(const Triple& t) { return {t[0], t[1], t[2]}; }
Triple triple(Vec3 v) { return {v.x, v.y, v.z}; }

const Universe& require_geometry(const Universe& u) {
  if (!u.has_geometry()) throw GeometryError("scene '" + u.spec.name + "' has no knot geometry");
  return u;
}

int element_of(const Universe& u, const py::object& world) {
  if (world.is_none()) return u.group.identity;
  if (py::isinstance<py::int_>(world)) {
    int e = world.cast<int>();
    if (e < 0 || e >= u.group.order()) throw py::index_error("no such group element");
    return e;
  }
  return u.world(world.cast<std::string>());
}

Pose pose_of(const Universe& u, const py::object& position, double yaw, double pitch) {
  Pose p = default_pose(u);
  if (!position.is_none()) {
    p.position = vec(position.cast<Triple>());
    p.yaw = yaw;
    p.pitch = pitch;
  }
  return p;
}

py::bytes rgb_bytes(const Frame& f) {
  std::string out;
  out.reserve(f.pixels.size() * 3);
  for (Rgb c : f.pixels) {
    out.push_back(static_cast<char>(c.r));
    out.push_back(static_cast<char>(c.g));
    out.push_back(static_cast<char>(c.b));
  }
  return py::bytes(out);
}

py::bytes ppm_bytes(const Frame& f) {
  std::ostringstream out;
  write_ppm(out, f);
  return py::bytes(out.str());
}

py::dict event_dict(const Universe& u, const CrossingEvent& e) {
  py::dict d;
  d["t"] = e.t;
  d["segment"] = e.segment;
  d["direction"] = e.direction;
  d["applied"] = u.world_name(e.applied);
  d["point"] = triple(e.point);
  return d;
}

}  // namespace

PYBIND11_MODULE(_knotcover, m) {
  m.doc() = "Branched-cover worlds seen through a knot-shaped portal.";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto scene_error = py::register_exception<SceneError>(m, "SceneError", error.ptr());
  auto geometry_error = py::register_exception<GeometryError>(m, "GeometryError", error.ptr());
  py::register_exception<GenericityError>(m, "GenericityError", geometry_error.ptr());
  py::register_exception<GroupError>(m, "GroupError", error.ptr());
  (void)scene_error;

  m.attr("PROTOCOL_VERSION") = kProtocolVersion;

  m.def("builtin_scene_names", [] {
    std::vector<std::string> names;
    for (const SceneSpec& s : builtin_scenes()) names.push_back(s.name);
    return names;
  });
  m.def(
      "scene_json", [](const std::string& name_or_path) { return serialize_scene(load_scene(name_or_path)); },
      py::arg("scene"), "Scene as JSON, from a builtin name or a file path.");
  m.def(
      "validate_scene", [](const std::string& text) { validate_scene(parse_scene(text)); }, py::arg("text"),
      "Raises SceneError when the JSON scene is malformed or inconsistent.");
  m.def(
      "parse_move_request", [](const std::string& text) { return to_json(parse_move_request(text)); },
      py::arg("text"), "Normalized JSON of a movement request.");
  m.def(
      "parse_frame_state", [](const std::string& text) { return to_json(parse_frame_state(text)); },
      py::arg("text"), "Normalized JSON of a frame state.");

  py::class_<Universe, std::shared_ptr<Universe>>(m, "Universe")
      .def(py::init([](const std::string& scene) {
             return std::make_shared<Universe>(build_universe(load_scene(scene)));
           }),
           py::arg("scene"))
      .def_static(
          "from_json", [](const std::string& text) { return std::make_shared<Universe>(build_universe(parse_scene(text))); },
          py::arg("text"))
      .def_property_readonly("name", [](const Universe& u) { return u.spec.name; })
      .def_property_readonly("order", [](const Universe& u) { return u.group.order(); })
      .def_property_readonly("elements", [](const Universe& u) { return u.group.names; })
      .def_property_readonly("identity", [](const Universe& u) { return u.world_name(u.group.identity); })
      .def_property_readonly("generators", [](const Universe& u) { return u.group.generator_names; })
      .def_property_readonly("has_geometry", &Universe::has_geometry)
      .def_property_readonly("diameter", &Universe::diameter)
      .def_property_readonly("segment_count",
                             [](const Universe& u) { return u.has_geometry() ? u.surface->segments.size() : 0; })
      .def_property_readonly("labeling_violations", [](const Universe& u) { return u.labeling_violations; })
      .def_property_readonly("apex", [](const Universe& u) { return triple(require_geometry(u).surface->cone.apex); })
      .def_property_readonly("center", [](const Universe& u) { return triple(require_geometry(u).curve->center()); })
      .def("identify", [](const Universe& u) { return identify(u.group); })
      .def("table",
           [](const Universe& u) {
             std::vector<std::vector<std::string>> rows(u.group.order());
             for (int a = 0; a < u.group.order(); ++a) {
               for (int b = 0; b < u.group.order(); ++b) rows[a].push_back(u.world_name(u.group.mul(a, b)));
             }
             return rows;
           })
      .def("multiply",
           [](const Universe& u, const std::string& a, const std::string& b) {
             return u.world_name(u.group.mul(u.world(a), u.world(b)));
           })
      .def("color",
           [](const Universe& u, const std::string& world) {
             Rgb c = u.colors.at(u.world(world));
             return std::array<int, 3>{c.r, c.g, c.b};
           })
      .def(
          "transport",
          [](const Universe& u, const std::vector<Triple>& path, const py::object& start) {
            const Universe& g = require_geometry(u);
            std::vector<Vec3> pts;
            for (const Triple& t : path) pts.push_back(vec(t));
            PathTransport r = transport_path(WorldState{element_of(g, start)}, pts, *g.surface, g.group);
            py::list events;
            for (const CrossingEvent& e : r.events) events.append(event_dict(g, e));
            return py::make_tuple(g.world_name(r.state.element), events);
          },
          py::arg("path"), py::arg("start") = py::none(),
          "World reached along a polyline and the crossings on the way.")
      .def(
          "region_count",
          [](const Universe& u, int width, int height, const py::object& position, double yaw, double pitch) {
            const Universe& g = require_geometry(u);
            Camera cam = pose_camera(pose_of(g, position, yaw, pitch), width, height);
            return view_regions(g, cam, WorldState{g.group.identity}).arrangement.regions.size();
          },
          py::arg("width") = 320, py::arg("height") = 240, py::arg("position") = py::none(), py::arg("yaw") = 0.0,
          py::arg("pitch") = 0.0)
      .def(
          "render",
          [](const Universe& u, int width, int height, const py::object& position, double yaw, double pitch,
             const py::object& world, bool ppm) {
            const Universe& g = require_geometry(u);
            Camera cam = pose_camera(pose_of(g, position, yaw, pitch), width, height);
            Frame f = render_view(g, cam, WorldState{element_of(g, world)});
            return ppm ? ppm_bytes(f) : rgb_bytes(f);
          },
          py::arg("width") = 320, py::arg("height") = 240, py::arg("position") = py::none(), py::arg("yaw") = 0.0,
          py::arg("pitch") = 0.0, py::arg("world") = py::none(), py::arg("ppm") = false,
          "Row-major RGB bytes, or a binary PPM when ppm is true.");

  py::class_<Session, std::shared_ptr<Session>>(m, "Session")
      .def(py::init([](const std::shared_ptr<Universe>& u, int width, int height) {
             require_geometry(*u);
             return std::make_shared<Session>(u, width, height);
           }),
           py::arg("universe"), py::arg("width") = 640, py::arg("height") = 480)
      .def("frame_json", [](const Session& s) { return to_json(s.frame()); })
      .def("step_json", [](Session& s, const std::string& request) { return to_json(s.step(parse_move_request(request))); },
           py::arg("request"))
      .def(
          "step",
          [](Session& s, double dt, const Triple& move, double dyaw, double dpitch) {
            MoveRequest r;
            r.dt = dt;
            r.move = vec(move);
            r.look = {dyaw, dpitch};
            return to_json(s.step(r));
          },
          py::arg("dt") = 1.0 / 60, py::arg("move") = Triple{0, 0, 0}, py::arg("dyaw") = 0.0, py::arg("dpitch") = 0.0)
      .def_property_readonly("world", [](const Session& s) { return s.universe().world_name(s.world().element); })
      .def_property_readonly("position", [](const Session& s) { return triple(s.pose().position); })
      .def_property_readonly("yaw", [](const Session& s) { return s.pose().yaw; })
      .def_property_readonly("pitch", [](const Session& s) { return s.pose().pitch; })
      .def_property_readonly("crossings", [](const Session& s) { return s.log().size(); })
      .def("render", [](const Session& s, bool ppm) { return ppm ? ppm_bytes(s.render()) : rgb_bytes(s.render()); },
           py::arg("ppm") = false);
}
