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

#include "knotcover/protocol.hpp"

#include <cmath>

#include <json.hpp>

#include "knotcover/error.hpp"

namespace knotcover {

using nlohmann::json;

Camera pose_camera(const Pose& pose, int width, int height) {
  Camera c;
  c.position = pose.position;
  c.forward = {std::sin(pose.yaw) * std::cos(pose.pitch), std::sin(pose.pitch),
               std::cos(pose.yaw) * std::cos(pose.pitch)};
  c.up = {0, 1, 0};
  c.width = width;
  c.height = height;
  return c;
}

namespace {

json vec(Vec3 v) { return {v.x, v.y, v.z}; }
json vec(Vec2 v) { return {v.x, v.y}; }
json color(Rgb c) { return {c.r, c.g, c.b}; }

Vec3 vec3(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()}; }
Vec2 vec2(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }
Rgb rgb(const json& j) { return {j.at(0).get<uint8_t>(), j.at(1).get<uint8_t>(), j.at(2).get<uint8_t>()}; }

json parse_or_throw(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(std::string("malformed ") + what + ": " + e.what());
  }
}

void check_version(const json& j, const char* what) {
  if (j.contains("version") && j["version"] != kProtocolVersion) {
    throw Error(std::string("unsupported ") + what + " version");
  }
}

}  // namespace

MoveRequest parse_move_request(std::string_view json_text) {
  json j = parse_or_throw(json_text, "move request");
  if (!j.is_object()) throw Error("move request must be an object");
  check_version(j, "move request");
  MoveRequest r;
  try {
    if (j.contains("dt")) r.dt = j["dt"].get<double>();
    if (j.contains("move")) r.move = vec3(j["move"]);
    if (j.contains("look")) r.look = {j["look"].at(0).get<double>(), j["look"].at(1).get<double>()};
  } catch (const json::exception& e) {
    throw Error(std::string("malformed move request: ") + e.what());
  }
  if (!std::isfinite(r.dt) || r.dt < 0 || r.dt > 1) throw Error("move request: dt must be in [0, 1] seconds");
  for (double v : {r.move.x, r.move.y, r.move.z, r.look[0], r.look[1]}) {
    if (!std::isfinite(v)) throw Error("move request: values must be finite");
  }
  return r;
}

std::string to_json(const MoveRequest& r) {
  json j = {{"version", kProtocolVersion}, {"dt", r.dt}, {"move", vec(r.move)}, {"look", {r.look[0], r.look[1]}}};
  return j.dump();
}

std::string to_json(const FrameState& f) {
  json regions = json::array();
  for (const FrameRegion& r : f.regions) {
    json loops = json::array();
    for (const auto& loop : r.loops) {
      json pts = json::array();
      for (const Vec2& p : loop) pts.push_back(vec(p));
      loops.push_back(pts);
    }
    regions.push_back({{"id", r.id},
                       {"world", r.world},
                       {"color", color(r.color)},
                       {"loops", loops},
                       {"pole", vec(r.pole)},
                       {"radius", r.radius},
                       {"bbox", r.bbox}});
  }
  json events = json::array();
  for (const FrameEvent& e : f.events) {
    events.push_back({{"segment", e.segment},
                      {"direction", e.direction},
                      {"applied", e.applied},
                      {"world_after", e.world_after},
                      {"point", vec(e.point)}});
  }
  json legend = json::array();
  for (const LegendEntry& l : f.legend) legend.push_back({{"world", l.world}, {"color", color(l.color)}});
  json j = {{"version", f.version},
            {"scene", f.scene},
            {"world", f.world},
            {"size", {f.width, f.height}},
            {"pose", {{"position", vec(f.pose.position)}, {"yaw", f.pose.yaw}, {"pitch", f.pose.pitch}}},
            {"knot", f.knot},
            {"regions", regions},
            {"events", events},
            {"legend", legend}};
  return j.dump();
}

FrameState parse_frame_state(std::string_view json_text) {
  json j = parse_or_throw(json_text, "frame state");
  check_version(j, "frame state");
  FrameState f;
  try {
    f.version = j.at("version").get<int>();
    f.scene = j.at("scene").get<std::string>();
    f.world = j.at("world").get<std::string>();
    f.width = j.at("size").at(0).get<int>();
    f.height = j.at("size").at(1).get<int>();
    const json& pose = j.at("pose");
    f.pose = {vec3(pose.at("position")), pose.at("yaw").get<double>(), pose.at("pitch").get<double>()};
    f.knot = j.at("knot").get<std::vector<std::array<double, 4>>>();
    for (const json& r : j.at("regions")) {
      FrameRegion out;
      out.id = r.at("id").get<int>();
      out.world = r.at("world").get<std::string>();
      out.color = rgb(r.at("color"));
      for (const json& loop : r.at("loops")) {
        std::vector<Vec2> pts;
        for (const json& p : loop) pts.push_back(vec2(p));
        out.loops.push_back(std::move(pts));
      }
      out.pole = vec2(r.at("pole"));
      out.radius = r.at("radius").get<double>();
      out.bbox = r.at("bbox").get<std::array<double, 4>>();
      f.regions.push_back(std::move(out));
    }
    for (const json& e : j.at("events")) {
      f.events.push_back({e.at("segment").get<int>(), e.at("direction").get<int>(), e.at("applied").get<std::string>(),
                          e.at("world_after").get<std::string>(), vec3(e.at("point"))});
    }
    for (const json& l : j.at("legend")) f.legend.push_back({l.at("world").get<std::string>(), rgb(l.at("color"))});
  } catch (const json::exception& e) {
    throw Error(std::string("malformed frame state: ") + e.what());
  }
  return f;
}

}  // namespace knotcover
