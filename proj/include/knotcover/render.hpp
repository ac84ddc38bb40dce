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

#include <iosfwd>
#include <string>
#include <vector>

#include "knotcover/color.hpp"
#include "knotcover/regions.hpp"

namespace knotcover {

/// Color of the knot stroke.
inline constexpr Rgb kStrokeColor{16, 16, 16};

struct Frame {
  int width = 0;
  int height = 0;
  std::vector<Rgb> pixels;  // row-major, top row first
  int world = 0;

  Rgb at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
  Rgb& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
  bool operator==(const Frame&) const = default;
};

/// Fills each pixel with the color of its region's world, then strokes the
/// projected knot.
Frame render(const RegionMap& map, const Camera& camera, const KnotCurve& curve,
             const std::vector<Rgb>& world_colors, WorldState world);

/// Per-pixel raycast through every pixel center, without the subdivision.
Frame render_brute(const Camera& camera, const KnotCurve& curve, const PortalSurface& surface,
                   const GroupTable& group, const std::vector<Rgb>& world_colors, WorldState world);

/// 1-pixel Bresenham lines along the projected knot.
void stroke_knot(Frame& frame, const Camera& camera, const KnotCurve& curve, Rgb color = kStrokeColor);

void write_ppm(std::ostream& out, const Frame& frame);
void write_ppm(const std::string& path, const Frame& frame);

}  // namespace knotcover
