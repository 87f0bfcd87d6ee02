// Copyright 2026 The nfa3 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NFA3_REGEXP_HPP_
#define NFA3_REGEXP_HPP_

#include <string>
#include <vector>

#include "nfa3/automaton.hpp"

namespace nfa3 {

/// Compiled regular expression over single characters.  Supported syntax:
/// alternation `|`, grouping `()`, repetition `* + ?`, character classes
/// `[abc]` / `[a-z0-4]`, and `\x` escapes.  Whole-word matching only; no
/// anchors, no backreferences.  Internally: syntax tree -> Thompson NFA ->
/// subset-construction DFA, which also powers exact word counting and
/// uniform sampling.
class Regexp {
 public:
  explicit Regexp(const std::string& pattern);

  const Alphabet& alphabet() const { return alphabet_; }
  bool matches(const std::string& word) const;

  /// Number of distinct words of exactly `len` in the language.
  unsigned __int128 count_words(int len) const;

  /// The `index`-th word of length `len` in lexicographic symbol order.
  /// Pre: index < count_words(len).
  std::string word_at(int len, unsigned __int128 index) const;

 private:
  Alphabet alphabet_;
  int num_states_ = 0;                    // DFA states; 0 is initial
  std::vector<std::vector<int>> delta_;   // [state][sym] -> state or -1
  std::vector<char> accepting_;
  mutable std::vector<std::vector<unsigned __int128>> counts_;  // [len][state]

  void ensure_counts(int len) const;
};

}  // namespace nfa3

#endif  // NFA3_REGEXP_HPP_
