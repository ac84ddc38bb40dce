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

#include "knotcover/presentation.hpp"

#include <algorithm>
#include <cctype>

#include "knotcover/error.hpp"

namespace knotcover {

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

class WordParser {
 public:
  WordParser(std::string_view text, const std::vector<std::string>& gens)
      : text_(text), gens_(gens) {}

  Word parse() {
    Word w = parse_sequence();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SceneError("word \"" + std::string(text_) + "\" at column " +
                     std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '*')) {
      ++pos_;
    }
  }

  Word parse_sequence() {
    Word out;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] == ')') return out;
      Word item = parse_item();
      out.insert(out.end(), item.begin(), item.end());
    }
  }

  Word parse_item() {
    Word atom = parse_atom();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_space();
      size_t start = pos_;
      if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string digits(text_.substr(start, pos_ - start));
      if (digits.empty() || digits == "-" || digits == "+") fail("expected exponent");
      int k = std::stoi(digits);
      Word base = k < 0 ? inverse_word(atom) : atom;
      Word out;
      for (int i = 0; i < std::abs(k); ++i) out.insert(out.end(), base.begin(), base.end());
      return out;
    }
    return atom;
  }

  Word parse_atom() {
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Word inner = parse_sequence();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("missing ')'");
      ++pos_;
      return inner;
    }
    if (c == '1') {
      ++pos_;
      return {};
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string_view token = text_.substr(start, pos_ - start);
    for (size_t g = 0; g < gens_.size(); ++g) {
      if (token == gens_[g]) return {letter(static_cast<int>(g))};
      if (token == upper(gens_[g])) return {letter(static_cast<int>(g), true)};
    }
    pos_ = start;
    fail("unknown generator '" + std::string(token) + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& gens_;
  size_t pos_ = 0;
};

}  // namespace

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

int Presentation::generator_index(std::string_view name) const {
  auto it = std::find(generators.begin(), generators.end(), name);
  return it == generators.end() ? -1 : static_cast<int>(it - generators.begin());
}

Word parse_word(std::string_view text,
                const std::vector<std::string>& generators) {
  return WordParser(text, generators).parse();
}

std::string format_word(const Word& w,
                        const std::vector<std::string>& generators) {
  if (w.empty()) return "1";
  std::string out;
  for (int l : w) {
    if (!out.empty()) out += ' ';
    const std::string& name = generators.at(letter_generator(l));
    out += letter_inverse(l) ? upper(name) : name;
  }
  return out;
}

bool valid_generator_name(std::string_view name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::islower(static_cast<unsigned char>(c)) ||
           std::isdigit(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace knotcover
