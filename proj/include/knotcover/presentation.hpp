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

#include <string>
#include <string_view>
#include <vector>

namespace knotcover {

/// A word over generators: letter +(g+1) is generator g, -(g+1) its inverse.
using Word = std::vector<int>;

inline int letter(int generator, bool inverse = false) {
  return inverse ? -(generator + 1) : generator + 1;
}
inline int letter_generator(int l) { return (l > 0 ? l : -l) - 1; }
inline bool letter_inverse(int l) { return l < 0; }

Word inverse_word(const Word& w);

/// Finitely presented group <generators | relators>.
struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  int generator_index(std::string_view name) const;  // -1 if absent
  bool operator==(const Presentation&) const = default;
};

/// Parses the plain word syntax: space-separated generator names, an
/// uppercased name for the inverse, `x^k` powers and `( ... )^k` groups.
/// "1" or an empty string is the empty word.
Word parse_word(std::string_view text,
                const std::vector<std::string>& generators);

std::string format_word(const Word& w,
                        const std::vector<std::string>& generators);

/// Lowercase identifier check used for generator names.
bool valid_generator_name(std::string_view name);

}  // namespace knotcover
