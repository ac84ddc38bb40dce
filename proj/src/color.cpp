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

#include "knotcover/color.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace knotcover {

std::string to_hex(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

std::optional<Rgb> parse_hex(std::string_view text) {
  if (text.size() != 7 || text[0] != '#') return std::nullopt;
  uint8_t v[3];
  for (int k = 0; k < 3; ++k) {
    const char* first = text.data() + 1 + 2 * k;
    auto [ptr, ec] = std::from_chars(first, first + 2, v[k], 16);
    if (ec != std::errc() || ptr != first + 2) return std::nullopt;
  }
  return Rgb{v[0], v[1], v[2]};
}

Rgb palette_color(int k) {
  // Ice, forest, desert, ocean, ember, heather, moss, dusk, sand, rust.
  static constexpr std::array<Rgb, 10> kPalette = {{
      {226, 236, 244},
      {46, 125, 70},
      {222, 184, 112},
      {38, 92, 166},
      {196, 64, 44},
      {142, 92, 170},
      {120, 150, 52},
      {70, 52, 110},
      {240, 214, 160},
      {150, 82, 40},
  }};
  if (k >= 0 && k < static_cast<int>(kPalette.size())) return kPalette[k];
  double h = std::fmod(k * 0.618033988749895, 1.0) * 6;
  int i = static_cast<int>(h);
  double f = h - i;
  double v = 0.8;
  double s = 0.6;
  double p = v * (1 - s);
  double q = v * (1 - s * f);
  double t = v * (1 - s * (1 - f));
  double rgb[6][3] = {{v, t, p}, {q, v, p}, {p, v, t}, {p, q, v}, {t, p, v}, {v, p, q}};
  auto byte = [](double x) { return static_cast<uint8_t>(std::lround(x * 255)); };
  return {byte(rgb[i][0]), byte(rgb[i][1]), byte(rgb[i][2])};
}

}  // namespace knotcover
