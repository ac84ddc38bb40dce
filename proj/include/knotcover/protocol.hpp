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

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "knotcover/color.hpp"
#include "knotcover/regions.hpp"
#include "knotcover/vec.hpp"

namespace knotcover {

inline constexpr int kProtocolVersion = 1;

/// Observer position and heading. yaw turns about +y (0 looks along +z),
/// positive pitch looks up.
struct Pose {
  Vec3 position;
  double yaw = 0;
  double pitch = 0;
  bool operator==(const Pose&) const = default;
};

Camera pose_camera(const Pose& pose, int width, int height);

/// Movement request: `move` is (forward, right, up) in steps, scaled by
/// dt x 60 so that a held key at 60 frames per second moves one step per
/// frame; `look` is (dyaw, dpitch) in radians.
struct MoveRequest {
  double dt = 1.0 / 60;
  Vec3 move;
  std::array<double, 2> look{0, 0};
  bool operator==(const MoveRequest&) const = default;
};

MoveRequest parse_move_request(std::string_view json_text);
std::string to_json(const MoveRequest& request);

struct FrameRegion {
  int id = 0;
  std::vector<std::vector<Vec2>> loops;
  std::string world;
  Rgb color;
  Vec2 pole;
  double radius = 0;
  std::array<double, 4> bbox{};
  bool operator==(const FrameRegion&) const = default;
};

struct FrameEvent {
  int segment = 0;
  int direction = 0;
  std::string applied;
  std::string world_after;
  Vec3 point;
  bool operator==(const FrameEvent&) const = default;
};

struct LegendEntry {
  std::string world;
  Rgb color;
  bool operator==(const LegendEntry&) const = default;
};

/// Snapshot sent to clients after every step.
struct FrameState {
  int version = kProtocolVersion;
  std::string scene;
  std::string world;
  int width = 0;
  int height = 0;
  Pose pose;
  std::vector<std::array<double, 4>> knot;  // projected segments x0, y0, x1, y1
  std::vector<FrameRegion> regions;
  std::vector<FrameEvent> events;  // crossings during the last step
  std::vector<LegendEntry> legend;
  bool operator==(const FrameState&) const = default;
};

std::string to_json(const FrameState& frame);
FrameState parse_frame_state(std::string_view json_text);

}  // namespace knotcover
