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

// Acceptance checks for the engine. Prints one PASS/FAIL line per
// criterion. Exit status is 0 when the set of failing criteria equals the
// set passed with --known-failure (empty by default).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "knotcover/error.hpp"
#include "knotcover/scene.hpp"
#include "knotcover/session.hpp"
#include "knotcover/universe.hpp"
#include "oracles.hpp"

using namespace knotcover;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  uint64_t digest = oracle::fnv1a(nullptr, 0);

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  template <typename T>
  void mix(const T& v) {
    digest = oracle::fnv1a(&v, sizeof(v), digest);
  }
  void mix_bytes(const void* p, size_t n) { digest = oracle::fnv1a(p, n, digest); }
};

const std::vector<std::string> kGeometric = {"unknot", "twisted-unknot", "trefoil", "figure-eight", "solomon"};

const Universe& universe(const std::string& name) {
  static std::map<std::string, Universe> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, build_universe(builtin_scene(name))).first;
  return it->second;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vec3 unit_vector(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return normalized(Vec3{n(rng), n(rng), n(rng)});
}

// 1. Orders of the two-fold branched deck groups.
Outcome group_orders() {
  Outcome o;
  const std::map<std::string, int> expected = {{"unknot", 2}, {"trefoil", 6}, {"figure-eight", 10}, {"solomon", 10}};
  std::ostringstream msg;
  for (const auto& [name, order] : expected) {
    auto t0 = std::chrono::steady_clock::now();
    KnotCurve c = sample_parametric(builtin_knot(name), 256);
    Diagram d = project_and_cross(c, Projection::orthographic({0.013, 0.021, 1}));
    GroupTable g = enumerate(add_branching_relators(wirtinger(d), 2));
    int from_scene = build_universe(builtin_scene(name)).group.order();
    double dt = seconds_since(t0);
    msg << name << "=" << g.order() << " ";
    if (g.order() != order || from_scene != order) o.fail(name + " has order " + std::to_string(g.order()));
    if (dt >= 5) o.fail(name + " took " + std::to_string(dt) + " s");
  }
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> gens = {"a", "b"};
  Presentation hopf{gens, {parse_word("a^2", gens), parse_word("b^2", gens), parse_word("(a b)^2", gens)}};
  GroupTable h = enumerate(hopf);
  msg << "hopf=" << h.order();
  if (h.order() != 4) o.fail("hopf has order " + std::to_string(h.order()));
  if (seconds_since(t0) >= 5) o.fail("hopf too slow");
  if (o.pass) o.detail = msg.str();
  return o;
}

// 2. Identification against independently built tables.
Outcome identification() {
  Outcome o;
  const GroupTable& trefoil = universe("trefoil").group;
  const GroupTable& fig8 = universe("figure-eight").group;
  GroupTable hopf = build_universe(builtin_scene("hopf")).group;
  if (oracle::is_abelian(trefoil)) o.fail("trefoil group is abelian");
  if (!oracle::brute_isomorphic(trefoil, oracle::dihedral_table(3))) o.fail("trefoil group is not D3");
  if (!oracle::brute_isomorphic(fig8, oracle::dihedral_table(5))) o.fail("figure-eight group is not D5");
  if (!oracle::brute_isomorphic(hopf, oracle::klein_table())) o.fail("hopf group is not Z2xZ2");
  if (oracle::brute_isomorphic(hopf, oracle::dihedral_table(2)) != true) o.fail("D2 oracle disagrees");
  if (o.pass) {
    o.detail = "trefoil " + identify(trefoil) + ", figure-eight " + identify(fig8) + ", hopf " + identify(hopf);
  }
  return o;
}

int count_mismatches(const GroupTable& printed, const GroupTable& ref, const std::vector<int>& map, bool transposed) {
  int bad = 0;
  for (int a = 0; a < printed.order(); ++a) {
    for (int b = 0; b < printed.order(); ++b) {
      int cell = transposed ? printed.mul(b, a) : printed.mul(a, b);
      bad += map[cell] != ref.mul(map[a], map[b]);
    }
  }
  return bad;
}

// 3. Printed multiplication tables.
Outcome table_fixtures() {
  Outcome o;
  std::string dir = KNOTCOVER_FIXTURES;
  std::ostringstream msg;

  ParsedTable a1 = parse_table(read_file(dir + "/a1_table.txt"));
  const GroupTable& unknot = universe("unknot").group;
  bool exact = a1.table.names == unknot.names && a1.table.cells == unknot.cells;
  if (!exact) o.fail("2x2 table differs from the enumeration");
  msg << "2x2 exact; ";

  struct Fixture {
    const char* file;
    const char* scene;
    bool brute_minimum;
  };
  for (Fixture f : {Fixture{"d3_table.txt", "trefoil", true}, Fixture{"h2_table.txt", "figure-eight", false}}) {
    ParsedTable p = parse_table(read_file(dir + "/" + f.file));
    const GroupTable& ref = universe(f.scene).group;
    FixtureComparison c = compare_tables(p.table, ref);
    std::vector<int> sorted = c.mapping;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> all(ref.order());
    std::iota(all.begin(), all.end(), 0);
    if (sorted != all) o.fail(std::string(f.file) + ": relabeling is not a bijection");
    int recount = count_mismatches(p.table, ref, c.mapping, c.transposed);
    if (recount != c.mismatches) o.fail(std::string(f.file) + ": reported mismatch count is wrong");
    if (static_cast<int>(c.annotations.size()) != c.mismatches) o.fail(std::string(f.file) + ": unannotated mismatches");
    if (f.brute_minimum) {
      std::vector<int> perm = all;
      int best = INT32_MAX;
      do {
        for (bool t : {false, true}) best = std::min(best, count_mismatches(p.table, ref, perm, t));
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (best != c.mismatches) o.fail(std::string(f.file) + ": relabeling is not optimal");
    }
    msg << p.table.order() << "x" << p.table.order() << " " << c.mismatches << " residual";
    for (const auto& a : c.annotations) msg << " [" << a << "]";
    msg << "; ";
  }
  if (o.pass) o.detail = msg.str();
  return o;
}

// An apex is generic when the cone splits and the view from it is a regular
// diagram; the segment count itself is not consulted.
bool generic_apex(const KnotCurve& c, Vec3 apex) {
  try {
    split_cone(build_cone(c, apex));
    project_and_cross(c, Projection::central(apex, c.center(), false));
    return true;
  } catch (const GeometryError&) {
    return false;
  }
}

// 4. Segment counts for several apexes.
Outcome cone_segments() {
  Outcome o;
  const std::vector<std::pair<std::string, int>> expected = {{"unknot", 1}, {"twisted-unknot", 2}, {"trefoil", 3}};
  std::ostringstream msg;
  for (const auto& [name, count] : expected) {
    const Universe& u = universe(name);
    const KnotCurve& c = *u.curve;
    std::vector<Vec3> apexes = {u.surface->cone.apex};
    const double dirs[][2] = {{0.15, 1.0}, {0.3, 2.5}, {0.45, 4.0}, {0.6, 5.5}, {0.8, 0.3}};
    for (const auto& d : dirs) {
      if (apexes.size() >= 4) break;
      Vec3 dir{std::sin(d[0]) * std::cos(d[1]), std::sin(d[0]) * std::sin(d[1]), std::cos(d[0])};
      Vec3 apex = c.center() + dir * (10 * c.diameter());
      if (generic_apex(c, apex)) apexes.push_back(apex);
    }
    msg << name << ":";
    if (apexes.size() < 3) o.fail(name + ": fewer than 3 generic apexes");
    for (Vec3 apex : apexes) {
      int pieces = split_cone(build_cone(c, apex)).piece_count;
      o.mix(pieces);
      msg << " " << pieces;
      if (pieces != count) {
        o.fail(name + " has " + std::to_string(pieces) + " segments, expected " + std::to_string(count));
      }
    }
    msg << " ";
  }
  o.detail = o.pass ? msg.str() : o.detail + " (counts " + msg.str() + ")";
  return o;
}

// 5. A small loop around the knot traversed twice is trivial.
Outcome monodromy() {
  Outcome o;
  int loops = 0, nontrivial_once = 0;
  for (const auto& name : kGeometric) {
    const Universe& u = universe(name);
    const KnotCurve& c = *u.curve;
    double r = std::min(0.25 * min_self_distance(c), 0.5 * u.spec.tube_radius * u.diameter());
    for (int k = 0; k < 32; ++k) {
      double s = (k + 0.5) * static_cast<double>(c.size()) / 32;
      std::vector<Vec3> loop = oracle::meridian_loop(c, s, r, 48);
      std::vector<Vec3> twice = loop;
      twice.insert(twice.end(), loop.begin() + 1, loop.end());
      int once = transport_path(WorldState{}, loop, *u.surface, u.group).state.element;
      int two = transport_path(WorldState{}, twice, *u.surface, u.group).state.element;
      ++loops;
      nontrivial_once += once != u.group.identity;
      o.mix(once);
      o.mix(two);
      if (two != u.group.identity) o.fail(name + ": loop at s=" + std::to_string(s) + " has order > 2");
    }
  }
  if (nontrivial_once != loops) o.fail("a single loop was trivial");
  if (o.pass) o.detail = std::to_string(loops) + " loops, all nontrivial once and trivial twice";
  return o;
}

double sweep_clearance(const KnotCurve& c, Vec3 a, Vec3 m1, Vec3 m2, Vec3 b) {
  double best = INFINITY;
  for (size_t i = 0; i < c.size(); ++i) {
    Vec3 p = c.point(i), q = c.point(i + 1);
    best = std::min(best, oracle::dist_segment_triangle(p, q, a, m1, m2));
    best = std::min(best, oracle::dist_segment_triangle(p, q, m1, m2, b));
  }
  return best;
}

// 6. Endpoint-fixed homotopic paths give the same world.
Outcome homotopy_invariance() {
  Outcome o;
  std::ostringstream msg;
  std::mt19937_64 rng(0x6b6e6f74);
  for (const auto& name : kGeometric) {
    const Universe& u = universe(name);
    const KnotCurve& c = *u.curve;
    double D = u.diameter();
    double tube = u.spec.tube_radius * D;
    std::uniform_real_distribution<double> box(-1.2, 1.2), offset(-0.4, 0.4);
    int pairs = 0, nontrivial = 0, tries = 0;
    while (pairs < 10 && tries < 20000) {
      ++tries;
      Vec3 a = c.center() + Vec3{box(rng), box(rng), box(rng)} * D;
      Vec3 b = c.center() + Vec3{box(rng), box(rng), box(rng)} * D;
      Vec3 m1 = c.center() + Vec3{box(rng), box(rng), box(rng)} * D;
      Vec3 m2 = m1 + Vec3{offset(rng), offset(rng), offset(rng)} * D;
      if (sweep_clearance(c, a, m1, m2, b) <= tube) continue;
      std::vector<Vec3> p1 = {a, m1, b}, p2 = {a, m2, b};
      PathTransport t1 = transport_path(WorldState{}, p1, *u.surface, u.group);
      PathTransport t2 = transport_path(WorldState{}, p2, *u.surface, u.group);
      ++pairs;
      nontrivial += !t1.events.empty();
      o.mix(t1.state.element);
      o.mix(t2.state.element);
      if (t1.state != t2.state) {
        o.fail(name + ": homotopic paths end in " + u.world_name(t1.state.element) + " and " +
               u.world_name(t2.state.element));
      }
    }
    if (pairs < 10) o.fail(name + ": only " + std::to_string(pairs) + " admissible pairs");
    msg << name << " " << pairs << " pairs (" << nontrivial << " crossing the cone); ";
  }
  if (o.pass) o.detail = msg.str();
  return o;
}

// 7. Screen regions seen along the z axis.
Outcome region_counts() {
  Outcome o;
  std::ostringstream msg;
  for (const auto& [name, count] : std::vector<std::pair<std::string, size_t>>{{"unknot", 2}, {"trefoil", 5}, {"figure-eight", 6}}) {
    const Universe& u = universe(name);
    Camera cam = pose_camera(default_pose(u), 320, 240);
    RegionMap m = view_regions(u, cam, WorldState{});
    size_t n = m.arrangement.regions.size();
    o.mix(n);
    for (const Region& r : m.arrangement.regions) o.mix(r.area);
    msg << name << "=" << n << " ";
    if (n != count) o.fail(name + " has " + std::to_string(n) + " regions, expected " + std::to_string(count));
  }
  if (o.pass) o.detail = msg.str();
  return o;
}

double knot_distance(const std::vector<ScreenSegment>& segs, Vec2 p) {
  double best = INFINITY;
  for (const ScreenSegment& s : segs) best = std::min(best, oracle::dist_point_segment(p, s.a, s.b));
  return best;
}

// 8. Region render against per-pixel raycasting.
Outcome render_agreement() {
  Outcome o;
  std::mt19937_64 rng(0x72656e64);
  std::uniform_real_distribution<double> dist(1.0, 2.5), jitter(-0.2, 0.2);
  size_t total = 0, differ = 0, far = 0;
  double worst = 1;
  for (const auto& name : kGeometric) {
    const Universe& u = universe(name);
    for (int k = 0; k < 3; ++k) {
      Vec3 pos = u.curve->center() + unit_vector(rng) * (dist(rng) * u.diameter());
      Vec3 target = u.curve->center() + Vec3{jitter(rng), jitter(rng), jitter(rng)} * u.diameter();
      Camera cam = Camera::look_at(pos, target, 320, 240);
      WorldState w{static_cast<int>(rng() % u.group.order())};
      Frame fast = render_view(u, cam, w);
      Frame brute = render_brute(cam, *u.curve, *u.surface, u.group, u.colors, w);
      o.mix_bytes(fast.pixels.data(), fast.pixels.size() * sizeof(Rgb));
      o.mix_bytes(brute.pixels.data(), brute.pixels.size() * sizeof(Rgb));
      auto segs = project_knot(cam, *u.curve);
      size_t d = 0;
      for (int y = 0; y < 240; ++y) {
        for (int x = 0; x < 320; ++x) {
          if (fast.at(x, y) == brute.at(x, y)) continue;
          ++d;
          if (knot_distance(segs, {x + 0.5, y + 0.5}) > 1.5) ++far;
        }
      }
      total += fast.pixels.size();
      differ += d;
      worst = std::min(worst, 1 - static_cast<double>(d) / static_cast<double>(fast.pixels.size()));
    }
  }
  if (worst < 0.999) o.fail("agreement " + std::to_string(worst * 100) + "% on one frame");
  if (far > 0) o.fail(std::to_string(far) + " disagreeing pixels away from the knot");
  std::ostringstream msg;
  msg << "15 frames, " << differ << " of " << total << " pixels differ, worst frame " << worst * 100 << "%";
  if (o.pass) o.detail = msg.str();
  return o;
}

// 9. Incremental stepping against rendering the transported endpoint.
Outcome walk_consistency() {
  Outcome o;
  std::mt19937_64 rng(0x77616c6b);
  std::uniform_real_distribution<double> unit(-1, 1), dt(0.02, 0.25);
  int crossings = 0, changed = 0;
  for (int walk = 0; walk < 10; ++walk) {
    const std::string& name = kGeometric[walk % kGeometric.size()];
    auto u = std::make_shared<const Universe>(universe(name));
    Session s(u, 160, 120);
    std::vector<Vec3> visited = {s.pose().position};
    for (int step = 0; step < 40; ++step) {
      MoveRequest r;
      r.dt = dt(rng);
      r.move = {0.6 + 0.4 * unit(rng), unit(rng), 0.5 * unit(rng)};
      r.look = {0.15 * unit(rng), 0.05 * unit(rng)};
      FrameState f = s.step(r);
      crossings += static_cast<int>(f.events.size());
      visited.push_back(s.pose().position);
    }
    Frame incremental = s.render();
    WorldState w = transport_path(WorldState{}, visited, *u->surface, u->group).state;
    Frame direct = render_view(*u, pose_camera(s.pose(), 160, 120), w);
    changed += w.element != u->group.identity;
    o.mix_bytes(incremental.pixels.data(), incremental.pixels.size() * sizeof(Rgb));
    o.mix(w.element);
    if (w != s.world()) o.fail("walk " + std::to_string(walk) + ": transported world differs from the session");
    if (!(incremental == direct)) o.fail("walk " + std::to_string(walk) + ": frames differ");
  }
  if (o.pass) {
    o.detail = "10 walks, " + std::to_string(crossings) + " portal crossings, " + std::to_string(changed) +
               " ending outside the base world";
  }
  return o;
}

void report(int id, const char* title, const Outcome& o, const std::set<int>& known) {
  std::printf("[%s] %d %s: %s%s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(),
              !o.pass && known.count(id) ? " (known failure)" : "");
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--known-failure") == 0 && i + 1 < argc) {
      known.insert(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--known-failure N]...\n", argv[0]);
      return 2;
    }
  }

  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
    bool repeat;
  };
  const std::vector<Criterion> criteria = {
      {1, "group orders", group_orders, false},
      {2, "group identification", identification, false},
      {3, "table fixtures", table_fixtures, false},
      {4, "cone segment counts", cone_segments, true},
      {5, "order-two monodromy", monodromy, true},
      {6, "homotopy invariance", homotopy_invariance, true},
      {7, "z-view region counts", region_counts, true},
      {8, "region render vs raycast", render_agreement, true},
      {9, "walk consistency", walk_consistency, true},
  };

  std::set<int> failed;
  std::vector<std::pair<int, Outcome>> first;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    report(c.id, c.title, o, known);
    if (!o.pass) failed.insert(c.id);
    if (c.repeat) first.emplace_back(c.id, o);
  }

  Outcome determinism;
  std::ostringstream msg;
  for (const auto& [id, o] : first) {
    const Criterion& c = *std::find_if(criteria.begin(), criteria.end(), [&](const Criterion& x) { return x.id == id; });
    Outcome again;
    try {
      again = c.run();
    } catch (const std::exception& e) {
      again.fail(std::string("exception: ") + e.what());
    }
    if (again.digest != o.digest || again.pass != o.pass || again.detail != o.detail) {
      determinism.fail("criterion " + std::to_string(id) + " changed on rerun");
    }
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(o.digest));
    msg << id << ":" << hex << " ";
  }
  if (determinism.pass) determinism.detail = "reruns of 4-9 identical (" + msg.str() + ")";
  report(10, "determinism", determinism, known);
  if (!determinism.pass) failed.insert(10);

  std::printf("%zu of 10 criteria pass\n", 10 - failed.size());
  if (failed != known) {
    for (int id : failed) {
      if (!known.count(id)) std::printf("unexpected failure: %d\n", id);
    }
    for (int id : known) {
      if (!failed.count(id)) std::printf("expected failure %d now passes\n", id);
    }
    return 1;
  }
  return 0;
}
