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

#include "knotcover/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "knotcover/error.hpp"

namespace knotcover {

namespace {

constexpr int kUndefined = -1;
constexpr int kMaxTabulatedOrder = 4096;

int column(int l) { return 2 * letter_generator(l) + (letter_inverse(l) ? 1 : 0); }
int inverse_column(int col) { return col ^ 1; }

// Coset table over the trivial subgroup, HLT strategy with coincidence
// processing after Holt, Eick & O'Brien, Handbook of CGT, ch. 5.
class CosetTable {
 public:
  CosetTable(int columns, int max_cosets) : columns_(columns), max_cosets_(max_cosets) {
    add_row();
  }

  int size() const { return static_cast<int>(rows_.size()); }
  bool alive(int c) const { return parent_[c] == c; }
  int at(int c, int col) const { return rows_[c][col]; }

  void define(int c, int col) {
    if (size() >= max_cosets_) {
      throw GroupError("coset limit of " + std::to_string(max_cosets_) +
                       " exceeded (the quotient may be infinite)");
    }
    int d = add_row();
    rows_[c][col] = d;
    rows_[d][inverse_column(col)] = c;
  }

  void scan_and_fill(int c, const std::vector<int>& w) {
    if (w.empty()) return;
    int f = c;
    int b = c;
    int i = 0;
    int j = static_cast<int>(w.size()) - 1;
    for (;;) {
      while (i <= j && rows_[f][w[i]] != kUndefined) f = rows_[f][w[i++]];
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && rows_[b][inverse_column(w[j])] != kUndefined) {
        b = rows_[b][inverse_column(w[j--])];
      }
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        rows_[f][w[i]] = b;
        rows_[b][inverse_column(w[i])] = f;
        return;
      }
      define(f, w[i]);
    }
  }

  int rep(int c) {
    int root = c;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[c] != root) {
      int next = parent_[c];
      parent_[c] = root;
      c = next;
    }
    return root;
  }

 private:
  int add_row() {
    rows_.emplace_back(columns_, kUndefined);
    parent_.push_back(size() - 1);
    return size() - 1;
  }

  void merge(int a, int b, std::vector<int>& queue) {
    int x = rep(a);
    int y = rep(b);
    if (x == y) return;
    int lo = std::min(x, y);
    int hi = std::max(x, y);
    parent_[hi] = lo;
    queue.push_back(hi);
  }

  void coincidence(int a, int b) {
    std::vector<int> queue;
    merge(a, b, queue);
    for (size_t i = 0; i < queue.size(); ++i) {
      int g = queue[i];
      for (int col = 0; col < columns_; ++col) {
        int d = rows_[g][col];
        if (d == kUndefined) continue;
        rows_[d][inverse_column(col)] = kUndefined;
        int mu = rep(g);
        int nu = rep(d);
        if (rows_[mu][col] != kUndefined) {
          merge(nu, rows_[mu][col], queue);
        } else if (rows_[nu][inverse_column(col)] != kUndefined) {
          merge(mu, rows_[nu][inverse_column(col)], queue);
        } else {
          rows_[mu][col] = nu;
          rows_[nu][inverse_column(col)] = mu;
        }
      }
    }
  }

  int columns_;
  int max_cosets_;
  std::vector<std::vector<int>> rows_;
  std::vector<int> parent_;
};

std::string element_label(const std::set<std::string>& taken) {
  for (char c = 'a'; c <= 'z'; ++c) {
    std::string s(1, c);
    if (!taken.count(s)) return s;
  }
  for (int k = 1;; ++k) {
    std::string s = "g" + std::to_string(k);
    if (!taken.count(s)) return s;
  }
}

void fill_inverses(GroupTable& t) {
  int n = t.order();
  t.inverse.assign(n, -1);
  if (t.identity < 0) return;
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      if (t.mul(g, h) == t.identity) {
        t.inverse[g] = h;
        break;
      }
    }
  }
}

GroupTable from_product(int n, const std::vector<std::string>& names,
                        const std::function<int(int, int)>& product) {
  GroupTable t;
  t.names = names;
  t.cells.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) t.cells[static_cast<size_t>(a) * n + b] = product(a, b);
  }
  t.identity = 0;
  fill_inverses(t);
  return t;
}

std::vector<int> generated_closure(const GroupTable& t, const std::vector<int>& gens) {
  std::vector<int> seen(t.order(), 0);
  std::vector<int> stack = {t.identity};
  seen[t.identity] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int g : gens) {
      int y = t.mul(x, g);
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return seen;
}

}  // namespace

int GroupTable::find(std::string_view name) const {
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

int GroupTable::element(std::string_view name) const {
  for (size_t i = 0; i < generator_names.size(); ++i) {
    if (generator_names[i] == name) return generator_images[i];
  }
  return find(name);
}

int GroupTable::evaluate(const Word& w) const {
  int x = identity;
  for (int l : w) {
    int g = generator_images.at(letter_generator(l));
    x = mul(x, letter_inverse(l) ? inverse[g] : g);
  }
  return x;
}

int GroupTable::element_order(int g) const {
  int x = g;
  for (int k = 1; k <= order(); ++k) {
    if (x == identity) return k;
    x = mul(x, g);
  }
  return 0;
}

Presentation add_branching_relators(Presentation p, int order) {
  if (order < 2) throw GroupError("branching order must be at least 2");
  for (size_t g = 0; g < p.generators.size(); ++g) {
    p.relators.emplace_back(order, letter(static_cast<int>(g)));
  }
  return p;
}

GroupTable enumerate(const Presentation& p, int max_cosets) {
  int ngens = static_cast<int>(p.generators.size());
  if (ngens == 0) throw GroupError("presentation has no generators");
  int columns = 2 * ngens;
  std::vector<std::vector<int>> relators;
  for (const Word& w : p.relators) {
    std::vector<int> cols;
    for (int l : w) {
      if (letter_generator(l) >= ngens) throw GroupError("relator uses an undeclared generator");
      cols.push_back(column(l));
    }
    relators.push_back(std::move(cols));
  }

  CosetTable table(columns, max_cosets);
  for (int c = 0; c < table.size(); ++c) {
    for (const auto& r : relators) {
      if (!table.alive(c)) break;
      table.scan_and_fill(c, r);
    }
    for (int col = 0; col < columns && table.alive(c); ++col) {
      if (table.at(c, col) == kUndefined) table.define(c, col);
    }
  }

  // Renumber live cosets in breadth-first order from the trivial coset.
  std::vector<int> number(table.size(), -1);
  std::vector<int> order_of = {0};
  std::vector<std::vector<int>> words = {{}};
  number[0] = 0;
  for (size_t k = 0; k < order_of.size(); ++k) {
    int c = order_of[k];
    for (int col = 0; col < columns; ++col) {
      int d = table.rep(table.at(c, col));
      if (number[d] < 0) {
        number[d] = static_cast<int>(order_of.size());
        order_of.push_back(d);
        std::vector<int> w = words[k];
        w.push_back(col);
        words.push_back(std::move(w));
      }
    }
  }
  int n = static_cast<int>(order_of.size());
  if (n > kMaxTabulatedOrder) {
    throw GroupError("group of order " + std::to_string(n) + " is too large to tabulate");
  }
  std::vector<std::vector<int>> right(n, std::vector<int>(columns));
  for (int k = 0; k < n; ++k) {
    for (int col = 0; col < columns; ++col) {
      right[k][col] = number[table.rep(table.at(order_of[k], col))];
    }
  }

  GroupTable t;
  t.names.assign(n, "");
  t.cells.resize(static_cast<size_t>(n) * n);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      int x = g;
      for (int col : words[h]) x = right[x][col];
      t.cells[static_cast<size_t>(g) * n + h] = x;
    }
  }
  t.identity = 0;
  fill_inverses(t);

  t.generator_names = p.generators;
  for (int g = 0; g < ngens; ++g) t.generator_images.push_back(right[0][2 * g]);

  std::set<std::string> taken = {"e"};
  t.names[0] = "e";
  for (int g = 0; g < ngens; ++g) {
    int img = t.generator_images[g];
    if (t.names[img].empty() && !taken.count(p.generators[g])) {
      t.names[img] = p.generators[g];
      taken.insert(p.generators[g]);
    }
  }
  for (const auto& name : p.generators) taken.insert(name);
  for (int k = 0; k < n; ++k) {
    if (t.names[k].empty()) {
      t.names[k] = element_label(taken);
      taken.insert(t.names[k]);
    }
  }
  return t;
}

std::vector<std::string> validate(const GroupTable& t) {
  std::vector<std::string> out;
  int n = t.order();
  if (n == 0) return {"empty table"};
  if (t.cells.size() != static_cast<size_t>(n) * n) return {"table is not order x order"};
  for (int v : t.cells) {
    if (v < 0 || v >= n) return {"table entry out of range"};
  }
  auto name = [&](int g) { return t.names[g]; };

  for (int a = 0; a < n; ++a) {
    std::vector<int> row_seen(n, 0);
    std::vector<int> col_seen(n, 0);
    for (int b = 0; b < n; ++b) {
      if (row_seen[t.mul(a, b)]++) {
        out.push_back("row " + name(a) + " repeats " + name(t.mul(a, b)) + " (not a Latin square)");
        break;
      }
    }
    for (int b = 0; b < n; ++b) {
      if (col_seen[t.mul(b, a)]++) {
        out.push_back("column " + name(a) + " repeats " + name(t.mul(b, a)) + " (not a Latin square)");
        break;
      }
    }
  }

  if (t.identity < 0 || t.identity >= n) {
    out.push_back("no identity element");
  } else {
    for (int g = 0; g < n; ++g) {
      if (t.mul(t.identity, g) != g || t.mul(g, t.identity) != g) {
        out.push_back("identity " + name(t.identity) + " does not fix " + name(g));
        break;
      }
    }
    if (t.inverse.size() != static_cast<size_t>(n)) {
      out.push_back("inverse list has wrong length");
    } else {
      for (int g = 0; g < n; ++g) {
        int h = t.inverse[g];
        if (h < 0 || h >= n) {
          out.push_back(name(g) + " has no inverse");
        } else if (t.inverse[h] != g || t.mul(g, h) != t.identity || t.mul(h, g) != t.identity) {
          out.push_back("inverse of " + name(g) + " is inconsistent");
        }
      }
    }
  }

  int failures = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c))) {
          if (failures++ < 8) {
            out.push_back("associativity fails for (" + name(a) + ", " + name(b) + ", " + name(c) + ")");
          }
        }
      }
    }
  }
  if (failures > 8) {
    out.push_back(std::to_string(failures - 8) + " further associativity failures");
  }
  return out;
}

GroupTable cyclic_group(int n) {
  std::vector<std::string> names = {"e"};
  for (int k = 1; k < n; ++k) names.push_back("r" + std::to_string(k));
  return from_product(n, names, [n](int a, int b) { return (a + b) % n; });
}

GroupTable dihedral_group(int n) {
  // Element k + n*f is r^k s^f.
  std::vector<std::string> names;
  for (int f = 0; f < 2; ++f) {
    for (int k = 0; k < n; ++k) {
      names.push_back(k == 0 && f == 0 ? "e" : "r" + std::to_string(k) + (f ? "s" : ""));
    }
  }
  return from_product(2 * n, names, [n](int a, int b) {
    int ka = a % n, fa = a / n, kb = b % n, fb = b / n;
    int k = ((ka + (fa ? -kb : kb)) % n + n) % n;
    return k + n * ((fa + fb) % 2);
  });
}

GroupTable klein_four_group() {
  return from_product(4, {"e", "a", "b", "ab"}, [](int a, int b) { return a ^ b; });
}

bool isomorphic(const GroupTable& a, const GroupTable& b) {
  int n = a.order();
  if (n != b.order()) return false;
  std::vector<int> orders_a(n), orders_b(n);
  for (int g = 0; g < n; ++g) {
    orders_a[g] = a.element_order(g);
    orders_b[g] = b.element_order(g);
  }
  {
    auto sa = orders_a, sb = orders_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }

  std::vector<int> candidates(n);
  std::iota(candidates.begin(), candidates.end(), 0);
  std::sort(candidates.begin(), candidates.end(),
            [&](int x, int y) { return orders_a[x] > orders_a[y]; });
  std::vector<int> gens;
  std::vector<int> span = generated_closure(a, gens);
  for (int g : candidates) {
    if (!span[g]) {
      gens.push_back(g);
      span = generated_closure(a, gens);
    }
  }

  std::vector<int> images(gens.size(), -1);
  std::function<bool(size_t)> search = [&](size_t k) -> bool {
    if (k == gens.size()) {
      std::vector<int> phi(n, -1);
      phi[a.identity] = b.identity;
      std::vector<int> queue = {a.identity};
      for (size_t q = 0; q < queue.size(); ++q) {
        int x = queue[q];
        for (size_t i = 0; i < gens.size(); ++i) {
          int y = a.mul(x, gens[i]);
          int val = b.mul(phi[x], images[i]);
          if (phi[y] < 0) {
            phi[y] = val;
            queue.push_back(y);
          } else if (phi[y] != val) {
            return false;
          }
        }
      }
      std::vector<int> hit(n, 0);
      for (int x = 0; x < n; ++x) {
        if (phi[x] < 0 || hit[phi[x]]++) return false;
      }
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          if (phi[a.mul(x, y)] != b.mul(phi[x], phi[y])) return false;
        }
      }
      return true;
    }
    for (int y = 0; y < n; ++y) {
      if (orders_b[y] != orders_a[gens[k]]) continue;
      images[k] = y;
      if (search(k + 1)) return true;
    }
    return false;
  };
  return search(0);
}

std::string identify(const GroupTable& t) {
  int n = t.order();
  if (n == 1) return "trivial";
  if (n > 16) return "other";
  if (isomorphic(t, cyclic_group(n))) return n == 2 ? "Z2" : "Z" + std::to_string(n);
  if (n == 4 && isomorphic(t, klein_four_group())) return "Z2xZ2";
  if (n % 2 == 0 && n >= 6 && isomorphic(t, dihedral_group(n / 2))) {
    return n == 6 ? "S3/D3" : "D" + std::to_string(n / 2);
  }
  return "other";
}

ParsedTable parse_table(std::string_view text) {
  std::vector<std::vector<std::string>> grid;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::vector<std::string> row;
    std::string tok;
    while (words >> tok) {
      std::string clean;
      for (char c : tok) {
        if (c != '&' && c != '\\') clean += c;
      }
      if (!clean.empty()) row.push_back(clean);
    }
    if (!row.empty()) grid.push_back(std::move(row));
  }
  int n = static_cast<int>(grid.size());
  if (n == 0) throw GroupError("empty table");
  for (const auto& row : grid) {
    if (static_cast<int>(row.size()) != n) {
      throw GroupError("table is not square: " + std::to_string(n) + " rows but a row has " +
                       std::to_string(row.size()) + " entries");
    }
  }

  ParsedTable out;
  GroupTable& t = out.table;
  t.names = grid[0];
  {
    std::set<std::string> distinct(t.names.begin(), t.names.end());
    if (static_cast<int>(distinct.size()) != n) {
      throw GroupError("first row must list every element exactly once");
    }
  }
  std::vector<int> row_element(n);
  std::vector<int> seen(n, 0);
  bool rows_ok = true;
  for (int i = 0; i < n; ++i) {
    row_element[i] = t.find(grid[i][0]);
    if (row_element[i] < 0 || seen[row_element[i]]++) rows_ok = false;
  }
  if (!rows_ok) {
    out.violations.push_back("first column is not a permutation of the elements; rows read in order");
    std::iota(row_element.begin(), row_element.end(), 0);
  }
  t.cells.assign(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int v = t.find(grid[i][j]);
      if (v < 0) {
        out.violations.push_back("unknown element '" + grid[i][j] + "' in row " + std::to_string(i + 1));
        v = 0;
      }
      t.cells[static_cast<size_t>(row_element[i]) * n + j] = v;
    }
  }
  t.identity = -1;
  for (int g = 0; g < n && t.identity < 0; ++g) {
    bool ok = true;
    for (int h = 0; h < n && ok; ++h) ok = t.mul(g, h) == h && t.mul(h, g) == h;
    if (ok) t.identity = g;
  }
  fill_inverses(t);
  for (auto& v : validate(t)) out.violations.push_back(std::move(v));
  return out;
}

std::string format_table(const GroupTable& t) {
  size_t width = 1;
  for (const auto& name : t.names) width = std::max(width, name.size());
  std::string out;
  for (int a = 0; a < t.order(); ++a) {
    for (int b = 0; b < t.order(); ++b) {
      const std::string& name = t.names[t.mul(a, b)];
      if (b) out += ' ';
      out += name;
      if (b + 1 < t.order()) out.append(width - name.size(), ' ');
    }
    out += '\n';
  }
  return out;
}

FixtureComparison compare_tables(const GroupTable& printed, const GroupTable& reference) {
  int n = printed.order();
  FixtureComparison best;
  best.mismatches = std::numeric_limits<int>::max();
  if (n != reference.order()) {
    best.mismatches = n * n;
    best.annotations.push_back("printed order " + std::to_string(n) + " differs from enumerated order " +
                               std::to_string(reference.order()));
    return best;
  }

  for (int orient = 0; orient < 2; ++orient) {
    auto cell = [&](int a, int b) { return orient ? printed.mul(b, a) : printed.mul(a, b); };
    // Assign printed elements in index order; a cell (a, b, a*b) is scored at
    // the step where its last element receives an image.
    std::vector<std::vector<std::pair<int, int>>> completes(n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) completes[std::max({a, b, cell(a, b)})].push_back({a, b});
    }
    std::vector<int> map(n, -1), used(n, 0), best_map;
    int best_cost = best.mismatches;
    std::function<void(int, int)> dfs = [&](int k, int cost) {
      if (cost >= best_cost) return;
      if (k == n) {
        best_cost = cost;
        best_map = map;
        return;
      }
      std::vector<std::pair<int, int>> options;
      for (int y = 0; y < n; ++y) {
        if (used[y]) continue;
        map[k] = y;
        int added = 0;
        for (auto [a, b] : completes[k]) {
          if (reference.mul(map[a], map[b]) != map[cell(a, b)]) ++added;
        }
        options.push_back({added, y});
      }
      map[k] = -1;
      std::sort(options.begin(), options.end());
      for (auto [added, y] : options) {
        map[k] = y;
        used[y] = 1;
        dfs(k + 1, cost + added);
        used[y] = 0;
        map[k] = -1;
      }
    };
    dfs(0, 0);
    if (best_cost < best.mismatches) {
      best.mismatches = best_cost;
      best.mapping = best_map;
      best.transposed = orient == 1;
    }
  }

  std::vector<int> back(n);
  for (int x = 0; x < n; ++x) back[best.mapping[x]] = x;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int shown = best.transposed ? printed.mul(b, a) : printed.mul(a, b);
      int expected = back[reference.mul(best.mapping[a], best.mapping[b])];
      if (shown != expected) {
        int row = best.transposed ? b : a;
        int col = best.transposed ? a : b;
        best.annotations.push_back("row " + printed.names[row] + ", column " + printed.names[col] +
                                   ": printed " + printed.names[shown] + ", enumeration gives " +
                                   printed.names[expected]);
      }
    }
  }
  return best;
}

AbelianInvariants abelianize(const Presentation& p) {
  size_t cols = p.generators.size();
  std::vector<std::vector<int64_t>> m;
  for (const Word& w : p.relators) {
    std::vector<int64_t> row(cols, 0);
    for (int l : w) row[letter_generator(l)] += letter_inverse(l) ? -1 : 1;
    m.push_back(std::move(row));
  }
  size_t rows = m.size();
  std::vector<int64_t> diagonal;
  size_t t = 0;
  while (t < rows && t < cols) {
    // Pivot: smallest nonzero magnitude in the remaining block.
    size_t pr = rows, pc = cols;
    for (size_t i = t; i < rows; ++i) {
      for (size_t j = t; j < cols; ++j) {
        if (m[i][j] != 0 && (pr == rows || std::llabs(m[i][j]) < std::llabs(m[pr][pc]))) {
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == rows) break;
    std::swap(m[t], m[pr]);
    for (auto& row : m) std::swap(row[t], row[pc]);
    bool clean = true;
    for (size_t i = t + 1; i < rows; ++i) {
      int64_t q = m[i][t] / m[t][t];
      for (size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
      if (m[i][t] != 0) clean = false;
    }
    for (size_t j = t + 1; j < cols; ++j) {
      int64_t q = m[t][j] / m[t][t];
      for (size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
      if (m[t][j] != 0) clean = false;
    }
    if (!clean) continue;
    bool divides = true;
    for (size_t i = t + 1; i < rows && divides; ++i) {
      for (size_t j = t + 1; j < cols; ++j) {
        if (m[i][j] % m[t][t] != 0) {
          for (size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
          divides = false;
          break;
        }
      }
    }
    if (!divides) continue;
    diagonal.push_back(std::llabs(m[t][t]));
    ++t;
  }
  AbelianInvariants out;
  out.free_rank = static_cast<int>(cols - diagonal.size());
  for (int64_t d : diagonal) {
    if (d > 1) out.torsion.push_back(d);
  }
  return out;
}

}  // namespace knotcover
