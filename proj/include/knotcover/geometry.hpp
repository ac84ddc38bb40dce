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

#include <optional>
#include <span>
#include <vector>

#include "knotcover/vec.hpp"

namespace knotcover {

double point_segment_distance(Vec3 p, Vec3 a, Vec3 b);
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// Minimum distance between segments [a0,a1] and [b0,b1].
double segment_distance(Vec3 a0, Vec3 a1, Vec3 b0, Vec3 b1);

struct SegmentHit2 {
  double s;  // parameter on the first segment
  double t;  // parameter on the second segment
};

/// Proper intersection of two 2D segments, or nullopt. Parallel segments
/// report no intersection; callers that care check `parallel_overlap`.
std::optional<SegmentHit2> intersect_segments(Vec2 a0, Vec2 a1, Vec2 b0,
                                              Vec2 b1);
bool parallel_overlap(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1, double tol);

double signed_area(std::span<const Vec2> loop);

/// Even-odd containment over a set of loops.
bool inside_even_odd(const std::vector<std::vector<Vec2>>& loops, Vec2 p);
bool inside_even_odd(std::span<const Vec2> loop, Vec2 p);

}  // namespace knotcover
