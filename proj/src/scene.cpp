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

#include "knotcover/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "knotcover/error.hpp"
#include "knotcover/presentation.hpp"

namespace knotcover {

using nlohmann::json;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw SceneError(where + ": " + what);
}

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; }) == allowed.end()) {
      fail(where, "unknown key '" + key + "'");
    }
  }
}

double get_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  double x = v.get<double>();
  if (!std::isfinite(x)) fail(where, "expected a finite number");
  return x;
}

int get_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<int>();
}

std::string get_string(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

Vec3 get_vec3(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3) fail(where, "expected [x, y, z]");
  return {get_number(v[0], where + "[0]"), get_number(v[1], where + "[1]"), get_number(v[2], where + "[2]")};
}

std::vector<std::string> get_names(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected a list of names");
  std::vector<std::string> out;
  for (size_t k = 0; k < v.size(); ++k) out.push_back(get_string(v[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

std::vector<std::string> split_words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

KnotSource parse_knot(const json& j) {
  check_keys(j, "knot", {"type", "name", "terms", "points", "samples"});
  KnotSource k;
  if (!j.contains("type")) fail("knot", "missing 'type'");
  std::string type = get_string(j["type"], "knot.type");
  if (j.contains("samples")) k.samples = get_int(j["samples"], "knot.samples");
  if (type == "builtin") {
    k.kind = KnotSource::Kind::kBuiltin;
    if (!j.contains("name")) fail("knot", "missing 'name'");
    k.name = get_string(j["name"], "knot.name");
  } else if (type == "parametric") {
    k.kind = KnotSource::Kind::kParametric;
    if (!j.contains("terms")) fail("knot", "missing 'terms'");
    const json& terms = j["terms"];
    check_keys(terms, "knot.terms", {"x", "y", "z"});
    const char* axes[3] = {"x", "y", "z"};
    for (int a = 0; a < 3; ++a) {
      if (!terms.contains(axes[a])) continue;
      std::string where = std::string("knot.terms.") + axes[a];
      const json& rows = terms[axes[a]];
      if (!rows.is_array()) fail(where, "expected a list of [amplitude, frequency, phase]");
      for (size_t r = 0; r < rows.size(); ++r) {
        std::string w = where + "[" + std::to_string(r) + "]";
        const json& row = rows[r];
        if (!row.is_array() || row.size() < 2 || row.size() > 3) fail(w, "expected [amplitude, frequency, phase]");
        TrigTerm t;
        t.amplitude = get_number(row[0], w);
        t.frequency = get_number(row[1], w);
        t.phase = row.size() == 3 ? get_number(row[2], w) : 0;
        k.terms.terms[a].push_back(t);
      }
    }
  } else if (type == "points") {
    k.kind = KnotSource::Kind::kPoints;
    if (!j.contains("points")) fail("knot", "missing 'points'");
    const json& pts = j["points"];
    if (!pts.is_array()) fail("knot.points", "expected a list of [x, y, z]");
    for (size_t i = 0; i < pts.size(); ++i) k.points.push_back(get_vec3(pts[i], "knot.points[" + std::to_string(i) + "]"));
  } else {
    fail("knot.type", "unknown knot type '" + type + "' (expected builtin, parametric or points)");
  }
  return k;
}

GroupSource parse_group(const json& j) {
  check_keys(j, "group", {"type", "generators", "relators", "rows", "order"});
  GroupSource g;
  if (!j.contains("type")) fail("group", "missing 'type'");
  std::string type = get_string(j["type"], "group.type");
  if (type == "wirtinger") {
    g.kind = GroupSource::Kind::kWirtinger;
  } else if (type == "presentation") {
    g.kind = GroupSource::Kind::kPresentation;
  } else if (type == "table") {
    g.kind = GroupSource::Kind::kTable;
  } else {
    fail("group.type", "unknown group type '" + type + "' (expected wirtinger, presentation or table)");
  }
  if (j.contains("generators")) g.generators = get_names(j["generators"], "group.generators");
  if (j.contains("relators")) g.relators = get_names(j["relators"], "group.relators");
  if (j.contains("order")) g.order = get_int(j["order"], "group.order");
  if (j.contains("rows")) {
    const json& rows = j["rows"];
    if (!rows.is_array()) fail("group.rows", "expected a list of rows");
    for (size_t r = 0; r < rows.size(); ++r) {
      std::string where = "group.rows[" + std::to_string(r) + "]";
      g.rows.push_back(rows[r].is_string() ? split_words(rows[r].get<std::string>()) : get_names(rows[r], where));
    }
  }
  return g;
}

WorldSpec parse_world(const json& j, const std::string& where) {
  check_keys(j, where, {"name", "color"});
  WorldSpec w;
  if (!j.contains("name")) fail(where, "missing 'name'");
  w.name = get_string(j["name"], where + ".name");
  if (!j.contains("color")) fail(where, "missing 'color'");
  const json& c = j["color"];
  if (c.is_string()) {
    auto rgb = parse_hex(c.get<std::string>());
    if (!rgb) fail(where + ".color", "expected \"#rrggbb\"");
    w.color = *rgb;
  } else if (c.is_array() && c.size() == 3) {
    uint8_t v[3];
    for (int k = 0; k < 3; ++k) {
      int x = get_int(c[k], where + ".color");
      if (x < 0 || x > 255) fail(where + ".color", "components must be in 0..255");
      v[k] = static_cast<uint8_t>(x);
    }
    w.color = {v[0], v[1], v[2]};
  } else {
    fail(where + ".color", "expected \"#rrggbb\" or [r, g, b]");
  }
  return w;
}

std::pair<int, int> line_column(std::string_view text, size_t byte) {
  int line = 1;
  int column = 1;
  for (size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

void check_generator_names(const std::vector<std::string>& names, const std::string& where) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!valid_generator_name(n)) fail(where, "invalid generator name '" + n + "'");
    if (!seen.insert(n).second) fail(where, "duplicate generator '" + n + "'");
  }
}

}  // namespace

void validate_scene(const SceneSpec& spec) {
  if (spec.version != kSceneVersion) fail("version", "unsupported version " + std::to_string(spec.version));
  if (!(spec.scale > 0)) fail("scale", "must be positive");
  if (!(spec.tube_radius > 0 && spec.tube_radius < 0.5)) fail("tube_radius", "must be in (0, 0.5)");
  const KnotSource& k = spec.knot;
  if (!spec.group_only() && k.samples < 16) fail("knot.samples", "must be at least 16");
  switch (k.kind) {
    case KnotSource::Kind::kBuiltin:
      builtin_knot(k.name);
      break;
    case KnotSource::Kind::kParametric: {
      size_t count = 0;
      for (const auto& axis : k.terms.terms) {
        count += axis.size();
        for (const TrigTerm& t : axis) {
          if (t.frequency != std::round(t.frequency)) fail("knot.terms", "frequencies must be integers");
        }
      }
      if (count == 0) fail("knot.terms", "empty knot");
      break;
    }
    case KnotSource::Kind::kPoints:
      if (k.points.empty()) fail("knot.points", "empty knot");
      if (k.points.size() < 4) fail("knot.points", "need at least 4 control points");
      break;
    case KnotSource::Kind::kNone:
      break;
  }

  const GroupSource& g = spec.group;
  if (g.order < 2) fail("group.order", "branching order must be at least 2");
  std::vector<std::string> gens = g.generators;
  std::vector<std::string> elements;
  switch (g.kind) {
    case GroupSource::Kind::kWirtinger:
      if (spec.group_only()) fail("group", "a wirtinger group needs a knot");
      if (!g.relators.empty() || !g.rows.empty()) fail("group", "a wirtinger group takes only generators and order");
      check_generator_names(gens, "group.generators");
      break;
    case GroupSource::Kind::kPresentation:
      if (gens.empty()) fail("group.generators", "presentation has no generators");
      check_generator_names(gens, "group.generators");
      for (size_t r = 0; r < g.relators.size(); ++r) {
        try {
          parse_word(g.relators[r], gens);
        } catch (const SceneError& e) {
          fail("group.relators[" + std::to_string(r) + "]", e.what());
        }
      }
      break;
    case GroupSource::Kind::kTable: {
      if (g.rows.empty()) fail("group.rows", "empty table");
      for (size_t r = 0; r < g.rows.size(); ++r) {
        if (g.rows[r].size() != g.rows.size()) fail("group.rows[" + std::to_string(r) + "]", "table is not square");
        elements.push_back(g.rows[r][0]);
      }
      std::set<std::string> seen(elements.begin(), elements.end());
      if (seen.size() != elements.size()) fail("group.rows", "duplicate element in the first column");
      for (const auto& n : gens) {
        if (!seen.count(n)) fail("group.generators", "'" + n + "' is not an element of the table");
      }
      break;
    }
  }
  for (size_t i = 0; i < spec.gen_to_cone.size(); ++i) {
    const auto& n = spec.gen_to_cone[i];
    if (std::find(gens.begin(), gens.end(), n) == gens.end()) {
      fail("gen_to_cone[" + std::to_string(i) + "]", "generator '" + n + "' is not declared by the group");
    }
  }
  if (spec.group_only() && !spec.gen_to_cone.empty()) fail("gen_to_cone", "a scene without a knot has no cone");
  std::set<std::string> world_names;
  for (size_t i = 0; i < spec.worlds.size(); ++i) {
    if (!world_names.insert(spec.worlds[i].name).second) {
      fail("worlds[" + std::to_string(i) + "]", "duplicate world '" + spec.worlds[i].name + "'");
    }
  }
  if (g.kind == GroupSource::Kind::kTable) {
    if (spec.worlds.size() != elements.size()) {
      fail("worlds", "scene declares " + std::to_string(spec.worlds.size()) + " worlds but the group has order " +
                         std::to_string(elements.size()));
    }
    for (size_t i = 0; i < spec.worlds.size(); ++i) {
      if (std::find(elements.begin(), elements.end(), spec.worlds[i].name) == elements.end()) {
        fail("worlds[" + std::to_string(i) + "]", "'" + spec.worlds[i].name + "' is not a group element");
      }
    }
  }
}

SceneSpec parse_scene(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte);
    std::string msg = e.what();
    auto pos = msg.find("syntax error");
    throw SceneError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                     (pos == std::string::npos ? msg : msg.substr(pos)));
  }
  check_keys(j, "scene", {"version", "name", "scale", "knot", "apex", "group", "gen_to_cone", "worlds", "tube_radius"});
  SceneSpec s;
  if (!j.contains("version")) fail("scene", "missing 'version'");
  s.version = get_int(j["version"], "version");
  if (s.version != kSceneVersion) fail("version", "unsupported version " + std::to_string(s.version));
  if (j.contains("name")) s.name = get_string(j["name"], "name");
  if (j.contains("scale")) s.scale = get_number(j["scale"], "scale");
  if (j.contains("tube_radius")) s.tube_radius = get_number(j["tube_radius"], "tube_radius");
  if (j.contains("knot") && !j["knot"].is_null()) s.knot = parse_knot(j["knot"]);
  if (j.contains("apex")) s.apex = get_vec3(j["apex"], "apex");
  if (!j.contains("group")) fail("scene", "missing 'group'");
  s.group = parse_group(j["group"]);
  if (j.contains("gen_to_cone")) s.gen_to_cone = get_names(j["gen_to_cone"], "gen_to_cone");
  if (j.contains("worlds")) {
    const json& w = j["worlds"];
    if (!w.is_array()) fail("worlds", "expected a list");
    for (size_t i = 0; i < w.size(); ++i) s.worlds.push_back(parse_world(w[i], "worlds[" + std::to_string(i) + "]"));
  }
  validate_scene(s);
  return s;
}

std::string serialize_scene(const SceneSpec& s) {
  json j;
  j["version"] = s.version;
  j["name"] = s.name;
  j["scale"] = s.scale;
  j["tube_radius"] = s.tube_radius;
  if (!s.group_only()) {
    json k;
    k["samples"] = s.knot.samples;
    switch (s.knot.kind) {
      case KnotSource::Kind::kBuiltin:
        k["type"] = "builtin";
        k["name"] = s.knot.name;
        break;
      case KnotSource::Kind::kParametric: {
        k["type"] = "parametric";
        json terms = json::object();
        const char* axes[3] = {"x", "y", "z"};
        for (int a = 0; a < 3; ++a) {
          json rows = json::array();
          for (const TrigTerm& t : s.knot.terms.terms[a]) rows.push_back({t.amplitude, t.frequency, t.phase});
          terms[axes[a]] = rows;
        }
        k["terms"] = terms;
        break;
      }
      case KnotSource::Kind::kPoints: {
        k["type"] = "points";
        json pts = json::array();
        for (const Vec3& p : s.knot.points) pts.push_back({p.x, p.y, p.z});
        k["points"] = pts;
        break;
      }
      case KnotSource::Kind::kNone:
        break;
    }
    j["knot"] = k;
  }
  if (s.apex) j["apex"] = {s.apex->x, s.apex->y, s.apex->z};
  json g;
  switch (s.group.kind) {
    case GroupSource::Kind::kWirtinger:
      g["type"] = "wirtinger";
      break;
    case GroupSource::Kind::kPresentation:
      g["type"] = "presentation";
      g["relators"] = s.group.relators;
      break;
    case GroupSource::Kind::kTable: {
      g["type"] = "table";
      json rows = json::array();
      for (const auto& row : s.group.rows) {
        std::string line;
        for (const auto& cell : row) line += (line.empty() ? "" : " ") + cell;
        rows.push_back(line);
      }
      g["rows"] = rows;
      break;
    }
  }
  g["generators"] = s.group.generators;
  g["order"] = s.group.order;
  j["group"] = g;
  j["gen_to_cone"] = s.gen_to_cone;
  json worlds = json::array();
  for (const WorldSpec& w : s.worlds) worlds.push_back({{"name", w.name}, {"color", {w.color.r, w.color.g, w.color.b}}});
  j["worlds"] = worlds;
  return j.dump(2) + "\n";
}

SceneSpec load_scene(const std::string& path_or_name) {
  for (const SceneSpec& s : builtin_scenes()) {
    if (s.name == path_or_name) return s;
  }
  std::ifstream in(path_or_name, std::ios::binary);
  if (!in) throw SceneError("no builtin scene or readable file named '" + path_or_name + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scene(buf.str());
  } catch (const SceneError& e) {
    throw SceneError(path_or_name + ": " + e.what());
  }
}

ParametricKnot builtin_knot(std::string_view name) {
  ParametricKnot k;
  auto& [x, y, z] = k.terms;
  if (name == "unknot") {
    x = {{0.8, 1, 0}};
    y = {{1.5, 1, kHalfPi}};
  } else if (name == "twisted-unknot") {
    x = {{2, 1, 1}};
    y = {{1.5, 2, 2}};
    z = {{1, 1, 0}};
  } else if (name == "trefoil") {
    x = {{1, 1, 0}, {2, 2, 0}};
    y = {{1, 1, kHalfPi}, {-2, 2, kHalfPi}};
    z = {{-1, 3, 0}};
  } else if (name == "figure-eight") {
    x = {{2, 3, kHalfPi}, {0.5, 5, kHalfPi}, {0.5, 1, kHalfPi}};
    y = {{2, 3, 0}, {0.5, 5, 0}, {0.5, 1, 0}};
    z = {{1, 4, 0}};
  } else if (name == "solomon") {
    x = {{3, 2, kHalfPi}, {0.5, 7, kHalfPi}, {0.5, 3, kHalfPi}};
    y = {{3, 2, 0}, {0.5, 7, 0}, {-0.5, 3, 0}};
    z = {{1, 5, 0}};
  } else {
    throw SceneError("knot.name: unknown builtin knot '" + std::string(name) + "'");
  }
  return k;
}

std::vector<std::string> builtin_knot_names() {
  return {"unknot", "twisted-unknot", "trefoil", "figure-eight", "solomon"};
}

std::vector<SceneSpec> builtin_scenes() {
  struct Entry {
    const char* name;
    std::vector<std::string> generators;
    std::vector<std::string> worlds;
  };
  const std::vector<Entry> knots = {
      {"unknot", {"a"}, {"e", "a"}},
      {"twisted-unknot", {"a"}, {"e", "a"}},
      {"trefoil", {"a", "b", "c"}, {"e", "a", "b", "c", "d", "f"}},
      {"figure-eight", {"a", "b", "c", "d"}, {"e", "a", "b", "c", "d", "f", "g", "h", "i", "j"}},
      {"solomon", {"a", "b", "c", "d", "f"}, {"e", "a", "b", "c", "d", "f", "g", "h", "i", "j"}},
  };
  std::vector<SceneSpec> out;
  for (const Entry& e : knots) {
    SceneSpec s;
    s.name = e.name;
    s.knot.kind = KnotSource::Kind::kBuiltin;
    s.knot.name = e.name;
    s.group.kind = GroupSource::Kind::kWirtinger;
    s.group.generators = e.generators;
    s.gen_to_cone = e.generators;
    for (size_t k = 0; k < e.worlds.size(); ++k) s.worlds.push_back({e.worlds[k], palette_color(static_cast<int>(k))});
    out.push_back(std::move(s));
  }
  SceneSpec hopf;
  hopf.name = "hopf";
  hopf.group.kind = GroupSource::Kind::kPresentation;
  hopf.group.generators = {"a", "b"};
  hopf.group.relators = {"a^2", "b^2", "(a b)^2"};
  const char* hopf_worlds[] = {"e", "a", "b", "c"};
  for (int k = 0; k < 4; ++k) hopf.worlds.push_back({hopf_worlds[k], palette_color(k)});
  out.push_back(std::move(hopf));
  return out;
}

SceneSpec builtin_scene(std::string_view name) {
  for (SceneSpec& s : builtin_scenes()) {
    if (s.name == name) return s;
  }
  throw SceneError("unknown builtin scene '" + std::string(name) + "'");
}

KnotCurve scene_curve(const SceneSpec& spec) {
  KnotCurve curve;
  const KnotSource& k = spec.knot;
  switch (k.kind) {
    case KnotSource::Kind::kNone:
      throw GeometryError("scene '" + spec.name + "' has no knot geometry");
    case KnotSource::Kind::kBuiltin:
      curve = sample_parametric(builtin_knot(k.name), k.samples);
      break;
    case KnotSource::Kind::kParametric:
      curve = sample_parametric(k.terms, k.samples);
      break;
    case KnotSource::Kind::kPoints: {
      int per_span = std::max(1, static_cast<int>((k.samples + k.points.size() - 1) / k.points.size()));
      curve = catmull_rom(k.points, per_span);
      break;
    }
  }
  if (spec.scale != 1) {
    for (Vec3& p : curve.points) p = p * spec.scale;
  }
  return curve;
}

}  // namespace knotcover
