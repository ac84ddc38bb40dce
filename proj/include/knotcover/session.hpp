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

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "knotcover/protocol.hpp"
#include "knotcover/render.hpp"
#include "knotcover/transport.hpp"
#include "knotcover/universe.hpp"

namespace knotcover {

/// Starting pose: 1.5 diameters in front of the knot center along -z,
/// looking along +z.
Pose default_pose(const Universe& universe);

/// Step length for one frame of held movement: 0.05 x diameter.
double step_length(const Universe& universe);

/// Region map and frame for a pose, labeled from `world`.
RegionMap view_regions(const Universe& universe, const Camera& camera, WorldState world);
Frame render_view(const Universe& universe, const Camera& camera, WorldState world);

/// One observer walking through a universe. Requests are serialized.
class Session {
 public:
  Session(std::shared_ptr<const Universe> universe, int width, int height);

  FrameState frame() const;
  FrameState step(const MoveRequest& request);
  Frame render() const;

  Pose pose() const;
  WorldState world() const;
  std::vector<CrossingEvent> log() const;
  const Universe& universe() const { return *universe_; }

 private:
  FrameState frame_locked(const std::vector<CrossingEvent>& events, WorldState before) const;
  const RegionMap& identity_map_locked() const;

  std::shared_ptr<const Universe> universe_;
  int width_;
  int height_;
  mutable std::mutex mutex_;
  Pose pose_;
  WorldState world_;
  std::vector<CrossingEvent> log_;
  // Regions labeled from the identity, for the pose they were built at.
  mutable std::optional<std::pair<Pose, RegionMap>> cache_;
};

/// Sessions by id; universes are built once per scene name.
class SessionManager {
 public:
  /// `scene` is a builtin name or a path.
  std::string create(const std::string& scene, int width = 640, int height = 480);
  std::string create(const SceneSpec& spec, int width = 640, int height = 480);
  std::shared_ptr<Session> get(const std::string& id) const;
  bool remove(const std::string& id);

 private:
  std::shared_ptr<const Universe> universe_for(const std::string& scene);
  std::string add(std::shared_ptr<const Universe> universe, int width, int height);

  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const Universe>> universes_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  int next_id_ = 1;
};

}  // namespace knotcover
