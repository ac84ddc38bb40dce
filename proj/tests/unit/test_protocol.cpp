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

#include <chrono>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "knotcover/error.hpp"
#include "knotcover/protocol.hpp"
#include "knotcover/scene.hpp"
#include "knotcover/service.hpp"
#include "knotcover/session.hpp"

using namespace knotcover;
using nlohmann::json;

namespace {

std::shared_ptr<const Universe> shared_universe(const char* name) {
  return std::make_shared<const Universe>(build_universe(builtin_scene(name)));
}

MoveRequest request(double dt, Vec3 m, double dyaw = 0, double dpitch = 0) {
  MoveRequest r;
  r.dt = dt;
  r.move = m;
  r.look = {dyaw, dpitch};
  return r;
}

}  // namespace

TEST_CASE("move requests parse with defaults and reject bad values") {
  MoveRequest d = parse_move_request("{}");
  CHECK(d.dt == doctest::Approx(1.0 / 60));
  CHECK(d.move == Vec3{});
  MoveRequest r = parse_move_request(R"({"version":1,"dt":0.5,"move":[1,0,-1],"look":[0.1,-0.2]})");
  CHECK(r == request(0.5, {1, 0, -1}, 0.1, -0.2));
  CHECK(parse_move_request(to_json(r)) == r);
  CHECK_THROWS_AS(parse_move_request(R"({"dt":2})"), Error);
  CHECK_THROWS_AS(parse_move_request(R"({"dt":-0.1})"), Error);
  CHECK_THROWS_AS(parse_move_request(R"({"move":[1,2]})"), Error);
  CHECK_THROWS_AS(parse_move_request(R"({"version":2})"), Error);
  CHECK_THROWS_AS(parse_move_request("[1,2"), Error);
}

TEST_CASE("frame state round-trips through JSON") {
  Session s(shared_universe("trefoil"), 160, 120);
  FrameState f = s.step(request(0.1, {1, 0.3, 0}, 0.05, 0.01));
  FrameState back = parse_frame_state(to_json(f));
  CHECK(back == f);
  CHECK(f.version == kProtocolVersion);
  CHECK(f.scene == "trefoil");
  CHECK(f.regions.size() == 5);
  CHECK(f.legend.size() == 6);
  json j = json::parse(to_json(f));
  for (const char* key : {"version", "scene", "world", "size", "pose", "knot", "regions", "events", "legend"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["size"] == json::array({160, 120}));
  CHECK(j["regions"][0].contains("pole"));
  CHECK(j["regions"][0].contains("bbox"));
}

TEST_CASE("pose camera follows yaw and pitch") {
  Pose p{{0, 0, 0}, std::numbers::pi / 2, 0};
  Camera c = pose_camera(p, 100, 100);
  CHECK(c.unit_forward().x == doctest::Approx(1));
  CHECK(c.right().z == doctest::Approx(1));
  Pose up{{0, 0, 0}, 0, 0.5};
  CHECK(pose_camera(up, 100, 100).unit_forward().y > 0);
}

TEST_CASE("walking out of the unknot cone changes world and walking back restores it") {
  auto u = shared_universe("unknot");
  Session s(u, 160, 120);
  CHECK(s.frame().world == "e");
  CHECK(s.pose() == default_pose(*u));
  FrameState in = s.step(request(1.7 / 3, {1, 0, 0}));
  CHECK(in.world == "e");
  CHECK(in.events.empty());
  FrameState out = s.step(request(1, {0, 1, 0}));
  CHECK(out.world == "a");
  REQUIRE(out.events.size() == 1);
  CHECK(out.events[0].world_after == "a");
  FrameState back = s.step(request(1, {0, -1, 0}));
  CHECK(back.world == "e");
  REQUIRE(back.events.size() == 1);
  CHECK(back.events[0].direction == -out.events[0].direction);
  CHECK(s.log().size() == 2);
}

TEST_CASE("turning in place keeps the world and pitch is clamped") {
  Session s(shared_universe("trefoil"), 80, 60);
  FrameState f = s.step(request(0.5, {}, 0.7, 3));
  CHECK(f.world == "e");
  CHECK(f.events.empty());
  CHECK(f.pose.yaw == doctest::Approx(0.7));
  CHECK(f.pose.pitch == doctest::Approx(1.5));
  CHECK(f.pose.position == s.pose().position);
}

TEST_CASE("session rendering matches the stateless renderer") {
  auto u = shared_universe("figure-eight");
  Session s(u, 120, 90);
  s.step(request(0.3, {1, 0.5, 0.2}, 0.2, -0.1));
  Frame a = s.render();
  Frame b = render_view(*u, pose_camera(s.pose(), 120, 90), s.world());
  CHECK(a == b);
}

TEST_CASE("session manager creates, finds and removes sessions") {
  SessionManager m;
  std::string a = m.create("unknot", 64, 48);
  std::string b = m.create("unknot", 64, 48);
  CHECK(a != b);
  CHECK(&m.get(a)->universe() == &m.get(b)->universe());
  CHECK(m.remove(a));
  CHECK_FALSE(m.remove(a));
  CHECK(m.get(a) == nullptr);
  CHECK_THROWS_AS(m.create("hopf"), GeometryError);
  CHECK_THROWS_AS(m.create("nope"), SceneError);
  CHECK_THROWS_AS(m.create("unknot", 0, 10), Error);
}

TEST_CASE("engine service speaks JSON over HTTP") {
  EngineService service;
  int port = service.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread server([&] { service.listen(); });
  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(2);

  httplib::Result scenes;
  for (int i = 0; i < 50 && !scenes; ++i) {
    scenes = client.Get("/scenes");
    if (!scenes) std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  REQUIRE(scenes);
  CHECK(scenes->status == 200);
  json list = json::parse(scenes->body);
  CHECK(list["scenes"].size() == 6);

  auto created = client.Post("/sessions", R"({"scene":"trefoil","width":96,"height":72})", "application/json");
  REQUIRE(created);
  CHECK(created->status == 200);
  json c = json::parse(created->body);
  std::string id = c["session"];
  FrameState first = parse_frame_state(c["frame"].dump());
  CHECK(first.width == 96);
  CHECK(first.regions.size() == 5);

  auto stepped = client.Post("/sessions/" + id + "/step", to_json(request(0.2, {1, 0, 0})), "application/json");
  REQUIRE(stepped);
  CHECK(stepped->status == 200);
  FrameState after = parse_frame_state(stepped->body);
  CHECK(after.pose.position.z > first.pose.position.z);

  auto frame = client.Get("/sessions/" + id + "/frame");
  REQUIRE(frame);
  CHECK(parse_frame_state(frame->body) == FrameState{after.version, after.scene, after.world, after.width,
                                                     after.height, after.pose, after.knot, after.regions, {},
                                                     after.legend});

  auto bad_step = client.Post("/sessions/" + id + "/step", R"({"dt":5})", "application/json");
  REQUIRE(bad_step);
  CHECK(bad_step->status == 400);
  CHECK(json::parse(bad_step->body).contains("error"));

  auto missing = client.Post("/sessions", R"({"scene":"nope"})", "application/json");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  auto group_only = client.Post("/sessions", R"({"scene":"hopf"})", "application/json");
  REQUIRE(group_only);
  CHECK(group_only->status == 400);
  auto malformed = client.Post("/sessions", "not json", "application/json");
  REQUIRE(malformed);
  CHECK(malformed->status == 400);

  auto del = client.Delete("/sessions/" + id);
  REQUIRE(del);
  CHECK(del->status == 200);
  auto gone = client.Get("/sessions/" + id + "/frame");
  REQUIRE(gone);
  CHECK(gone->status == 404);

  service.stop();
  server.join();
}
