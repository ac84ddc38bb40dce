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

#include "knotcover/universe.hpp"

#include <algorithm>

#include "knotcover/error.hpp"

namespace knotcover {

int Universe::world(std::string_view name) const {
  int k = group.find(name);
  if (k < 0) throw SceneError("unknown world '" + std::string(name) + "'");
  return k;
}

namespace {

GroupTable table_group(const GroupSource& source) {
  std::string text;
  for (const auto& row : source.rows) {
    for (const auto& cell : row) text += cell + " ";
    text += "\n";
  }
  ParsedTable parsed = parse_table(text);
  if (!parsed.violations.empty()) {
    std::string msg = "group table is not a group:";
    for (const auto& v : parsed.violations) msg += "\n  " + v;
    throw SceneError(msg);
  }
  GroupTable t = parsed.table;
  t.generator_names = source.generators;
  t.generator_images.clear();
  for (const auto& g : source.generators) t.generator_images.push_back(t.find(g));
  return t;
}

}  // namespace

Universe build_universe(const SceneSpec& spec) {
  validate_scene(spec);
  Universe u;
  u.spec = spec;

  std::optional<Vec3> apex;
  if (!spec.group_only()) {
    u.curve = scene_curve(spec);
    apex = choose_apex(*u.curve, spec.apex);
  }

  const GroupSource& g = spec.group;
  try {
    switch (g.kind) {
      case GroupSource::Kind::kWirtinger: {
        u.apex_diagram = project_and_cross(*u.curve, Projection::central(*apex, u.curve->center(), false));
        size_t arcs = u.apex_diagram->arcs.size();
        if (g.generators.size() != arcs) {
          throw SceneError("group.generators: scene declares " + std::to_string(g.generators.size()) +
                           " generators but the knot seen from the apex has " + std::to_string(arcs) + " arcs");
        }
        u.presentation = wirtinger(*u.apex_diagram, g.generators);
        u.group = enumerate(add_branching_relators(*u.presentation, g.order));
        break;
      }
      case GroupSource::Kind::kPresentation: {
        Presentation p;
        p.generators = g.generators;
        for (const auto& r : g.relators) p.relators.push_back(parse_word(r, g.generators));
        u.presentation = p;
        u.group = enumerate(add_branching_relators(p, g.order));
        break;
      }
      case GroupSource::Kind::kTable:
        u.group = table_group(g);
        break;
    }
  } catch (const GroupError& e) {
    throw SceneError(std::string("group: ") + e.what());
  }

  if (spec.worlds.size() != static_cast<size_t>(u.group.order())) {
    throw SceneError("worlds: scene declares " + std::to_string(spec.worlds.size()) +
                     " worlds but the group has order " + std::to_string(u.group.order()));
  }
  u.colors.assign(u.group.order(), Rgb{});
  std::vector<bool> seen(u.group.order(), false);
  for (size_t i = 0; i < spec.worlds.size(); ++i) {
    int k = u.group.find(spec.worlds[i].name);
    if (k < 0) {
      throw SceneError("worlds[" + std::to_string(i) + "]: '" + spec.worlds[i].name + "' is not a group element");
    }
    seen[k] = true;
    u.colors[k] = spec.worlds[i].color;
  }

  if (u.curve) {
    PortalSurface s;
    s.cone = build_cone(*u.curve, *apex);
    s.pieces = split_cone(s.cone);
    s.scale = u.curve->diameter();
    if (spec.gen_to_cone.size() != static_cast<size_t>(s.pieces.piece_count)) {
      throw SceneError("gen_to_cone: scene maps " + std::to_string(spec.gen_to_cone.size()) +
                       " cone segments but the cone has " + std::to_string(s.pieces.piece_count));
    }
    s.segments = assign_generators(s.cone, s.pieces, spec.gen_to_cone, u.group);
    u.labeling_violations = check_labeling(s.pieces, s.segments, u.group);
    u.surface = std::move(s);
  }
  return u;
}

}  // namespace knotcover
