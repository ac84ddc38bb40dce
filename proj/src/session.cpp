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

#include "knotcover/session.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "knotcover/error.hpp"

namespace knotcover {

namespace {

constexpr double kStepFactor = 0.05;
constexpr double kFramesPerSecond = 60;
constexpr double kMaxPitch = 1.5;

const Universe& require_geometry(const Universe& u) {
  if (!u.has_geometry()) throw GeometryError("scene '" + u.spec.name + "' has no knot geometry");
  return u;
}

}  // namespace

Pose default_pose(const Universe& universe) {
  require_geometry(universe);
  Vec3 c = universe.curve->center();
  return {c - Vec3{0, 0, 1.5 * universe.diameter()}, 0, 0};
}

double step_length(const Universe& universe) { return kStepFactor * universe.diameter(); }

RegionMap view_regions(const Universe& universe, const Camera& camera, WorldState world) {
  require_geometry(universe);
  return region_map(camera, *universe.curve, *universe.surface, universe.group, world);
}

Frame render_view(const Universe& universe, const Camera& camera, WorldState world) {
  RegionMap map = view_regions(universe, camera, world);
  return render(map, camera, *universe.curve, universe.colors, world);
}

Session::Session(std::shared_ptr<const Universe> universe, int width, int height)
    : universe_(std::move(universe)), width_(width), height_(height) {
  if (width <= 0 || height <= 0 || width > 8192 || height > 8192) throw Error("invalid frame size");
  pose_ = default_pose(*universe_);
}

Pose Session::pose() const {
  std::lock_guard lock(mutex_);
  return pose_;
}

WorldState Session::world() const {
  std::lock_guard lock(mutex_);
  return world_;
}

std::vector<CrossingEvent> Session::log() const {
  std::lock_guard lock(mutex_);
  return log_;
}

const RegionMap& Session::identity_map_locked() const {
  if (!cache_ || !(cache_->first == pose_)) {
    Camera camera = pose_camera(pose_, width_, height_);
    cache_.emplace(pose_, view_regions(*universe_, camera, WorldState{}));
  }
  return cache_->second;
}

FrameState Session::frame() const {
  std::lock_guard lock(mutex_);
  return frame_locked({}, world_);
}

FrameState Session::frame_locked(const std::vector<CrossingEvent>& events, WorldState before) const {
  const Universe& u = *universe_;
  Camera camera = pose_camera(pose_, width_, height_);
  RegionMap map = relabel(identity_map_locked(), world_, u.group);
  FrameState f;
  f.scene = u.spec.name;
  f.world = u.world_name(world_.element);
  f.width = width_;
  f.height = height_;
  f.pose = pose_;
  for (const ScreenSegment& s : project_knot(camera, *u.curve)) f.knot.push_back({s.a.x, s.a.y, s.b.x, s.b.y});
  for (size_t k = 0; k < map.arrangement.regions.size(); ++k) {
    FrameRegion r;
    r.id = static_cast<int>(k);
    r.loops = map.arrangement.regions[k].loops;
    r.world = u.world_name(map.labels[k]);
    r.color = u.colors[map.labels[k]];
    r.pole = map.poles[k].point;
    r.radius = map.poles[k].radius;
    r.bbox = map.bboxes[k];
    f.regions.push_back(std::move(r));
  }
  WorldState w = before;
  for (const CrossingEvent& e : events) {
    w.element = u.group.mul(w.element, e.applied);
    f.events.push_back({e.segment, e.direction, u.world_name(e.applied), u.world_name(w.element), e.point});
  }
  for (int k = 0; k < u.group.order(); ++k) f.legend.push_back({u.world_name(k), u.colors[k]});
  return f;
}

FrameState Session::step(const MoveRequest& request) {
  std::lock_guard lock(mutex_);
  const Universe& u = *universe_;
  Pose next = pose_;
  next.yaw = std::remainder(pose_.yaw + request.look[0], 2 * std::numbers::pi);
  next.pitch = std::clamp(pose_.pitch + request.look[1], -kMaxPitch, kMaxPitch);
  Vec3 forward{std::sin(next.yaw), 0, std::cos(next.yaw)};
  Vec3 right{-std::cos(next.yaw), 0, std::sin(next.yaw)};
  Vec3 up{0, 1, 0};
  double scale = step_length(u) * request.dt * kFramesPerSecond;
  Vec3 delta = (forward * request.move.x + right * request.move.y + up * request.move.z) * scale;
  std::vector<CrossingEvent> events;
  WorldState before = world_;
  if (!(delta == Vec3{})) {
    Vec3 path[2] = {pose_.position, pose_.position + delta};
    PathTransport t = transport_path(world_, path, *u.surface, u.group);
    world_ = t.state;
    next.position = t.end;
    events = std::move(t.events);
    log_.insert(log_.end(), events.begin(), events.end());
  }
  pose_ = next;
  return frame_locked(events, before);
}

Frame Session::render() const {
  std::lock_guard lock(mutex_);
  const Universe& u = *universe_;
  Camera camera = pose_camera(pose_, width_, height_);
  RegionMap map = relabel(identity_map_locked(), world_, u.group);
  return knotcover::render(map, camera, *u.curve, u.colors, world_);
}

std::shared_ptr<const Universe> SessionManager::universe_for(const std::string& scene) {
  std::lock_guard lock(mutex_);
  auto it = universes_.find(scene);
  if (it != universes_.end()) return it->second;
  auto u = std::make_shared<const Universe>(build_universe(load_scene(scene)));
  universes_[scene] = u;
  return u;
}

std::string SessionManager::add(std::shared_ptr<const Universe> universe, int width, int height) {
  auto session = std::make_shared<Session>(std::move(universe), width, height);
  std::lock_guard lock(mutex_);
  std::string id = "s" + std::to_string(next_id_++);
  sessions_[id] = std::move(session);
  return id;
}

std::string SessionManager::create(const std::string& scene, int width, int height) {
  return add(universe_for(scene), width, height);
}

std::string SessionManager::create(const SceneSpec& spec, int width, int height) {
  return add(std::make_shared<const Universe>(build_universe(spec)), width, height);
}

std::shared_ptr<Session> SessionManager::get(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

bool SessionManager::remove(const std::string& id) {
  std::lock_guard lock(mutex_);
  return sessions_.erase(id) > 0;
}

}  // namespace knotcover
