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

#include "knotcover/render.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "knotcover/error.hpp"

namespace knotcover {

namespace {

Frame blank(const Camera& camera, WorldState world) {
  Frame f;
  f.width = camera.width;
  f.height = camera.height;
  f.pixels.resize(static_cast<size_t>(f.width) * f.height);
  f.world = world.element;
  return f;
}

void line(Frame& frame, int x0, int y0, int x1, int y1, Rgb color) {
  int dx = std::abs(x1 - x0);
  int dy = -std::abs(y1 - y0);
  int sx = x0 < x1 ? 1 : -1;
  int sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  while (true) {
    if (x0 >= 0 && x0 < frame.width && y0 >= 0 && y0 < frame.height) frame.at(x0, y0) = color;
    if (x0 == x1 && y0 == y1) break;
    int e2 = 2 * err;
    if (e2 >= dy) err += dy, x0 += sx;
    if (e2 <= dx) err += dx, y0 += sy;
  }
}

int pixel_index(double v, int size) {
  return std::clamp(static_cast<int>(std::floor(v)), 0, size - 1);
}

}  // namespace

void stroke_knot(Frame& frame, const Camera& camera, const KnotCurve& curve, Rgb color) {
  for (const ScreenSegment& s : project_knot(camera, curve)) {
    line(frame, pixel_index(s.a.x, frame.width), pixel_index(s.a.y, frame.height), pixel_index(s.b.x, frame.width),
         pixel_index(s.b.y, frame.height), color);
  }
}

Frame render(const RegionMap& map, const Camera& camera, const KnotCurve& curve,
             const std::vector<Rgb>& world_colors, WorldState world) {
  Frame f = blank(camera, world);
  for (int y = 0; y < f.height; ++y) {
    for (int x = 0; x < f.width; ++x) {
      int region = point_region(map, {x + 0.5, y + 0.5});
      f.at(x, y) = world_colors.at(map.labels[region]);
    }
  }
  stroke_knot(f, camera, curve);
  return f;
}

Frame render_brute(const Camera& camera, const KnotCurve& curve, const PortalSurface& surface,
                   const GroupTable& group, const std::vector<Rgb>& world_colors, WorldState world) {
  Frame f = blank(camera, world);
  for (int y = 0; y < f.height; ++y) {
    for (int x = 0; x < f.width; ++x) {
      int w = ray_world(camera, {x + 0.5, y + 0.5}, surface, group, world, 0.25);
      f.at(x, y) = world_colors.at(w);
    }
  }
  stroke_knot(f, camera, curve);
  return f;
}

void write_ppm(std::ostream& out, const Frame& frame) {
  out << "P6\n" << frame.width << ' ' << frame.height << "\n255\n";
  for (const Rgb& c : frame.pixels) {
    const char bytes[3] = {static_cast<char>(c.r), static_cast<char>(c.g), static_cast<char>(c.b)};
    out.write(bytes, 3);
  }
}

void write_ppm(const std::string& path, const Frame& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  write_ppm(out, frame);
  if (!out) throw Error("failed writing " + path);
}

}  // namespace knotcover
