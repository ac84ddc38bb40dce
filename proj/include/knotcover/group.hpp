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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "knotcover/presentation.hpp"

namespace knotcover {

/// Finite group given by its multiplication table. Rows are the left factor:
/// `mul(a, b)` is a*b.
struct GroupTable {
  std::vector<std::string> names;
  std::vector<int> cells;  // order x order, row-major
  int identity = 0;
  std::vector<int> inverse;
  /// Presentation generators and the elements they map to (may be empty for
  /// tables that did not come from a presentation).
  std::vector<std::string> generator_names;
  std::vector<int> generator_images;

  int order() const { return static_cast<int>(names.size()); }
  int mul(int a, int b) const { return cells[static_cast<size_t>(a) * names.size() + b]; }
  int find(std::string_view name) const;  // -1 if absent
  /// Element named `name`, or the image of generator `name`.
  int element(std::string_view name) const;
  int evaluate(const Word& w) const;  // requires generator_images
  int element_order(int g) const;
};

/// Appends g^order for every generator.
Presentation add_branching_relators(Presentation p, int order);

/// Coset enumeration over the trivial subgroup. Element 0 is the identity.
/// Throws GroupError when more than `max_cosets` cosets get defined.
GroupTable enumerate(const Presentation& p, int max_cosets = 10000);

/// Empty iff `t` is a group table with consistent identity and inverses.
std::vector<std::string> validate(const GroupTable& t);

/// trivial, Z2, Z<n>, Z2xZ2, S3/D3, D<n> or other.
std::string identify(const GroupTable& t);

bool isomorphic(const GroupTable& a, const GroupTable& b);

GroupTable cyclic_group(int n);
GroupTable dihedral_group(int n);  // order 2n
GroupTable klein_four_group();

struct ParsedTable {
  GroupTable table;
  std::vector<std::string> violations;
};

/// Reads a square letter grid (whitespace separated; '&' and '\\' ignored).
/// The element of row i is its first entry, the element of column j is the
/// first row's entry. Throws GroupError on non-square grids.
ParsedTable parse_table(std::string_view text);

/// Letter grid with rows as left factor.
std::string format_table(const GroupTable& t);

/// Best relabeling of a printed table onto a reference table, trying the
/// printed grid as given and transposed.
struct FixtureComparison {
  bool transposed = false;
  std::vector<int> mapping;  // printed element -> reference element
  int mismatches = 0;
  std::vector<std::string> annotations;
};
FixtureComparison compare_tables(const GroupTable& printed,
                                 const GroupTable& reference);

struct AbelianInvariants {
  int free_rank = 0;
  std::vector<int64_t> torsion;  // invariant factors > 1
};
/// Smith normal form of the relator exponent-sum matrix.
AbelianInvariants abelianize(const Presentation& p);

}  // namespace knotcover
