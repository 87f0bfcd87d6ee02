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

#ifndef NFA3_AUTOMATON_HPP_
#define NFA3_AUTOMATON_HPP_

#include <optional>
#include <string>
#include <vector>

#include "nfa3/common.hpp"

namespace nfa3 {

using State = int;    ///< 0-based; state 0 is always the initial state q1.
using Symbol = int;   ///< dense index into an Alphabet.

/// Ordered set of distinct characters; symbols are interned to dense ids.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::string chars);  // sorts and dedups

  int size() const { return static_cast<int>(chars_.size()); }
  char at(Symbol s) const { return chars_.at(static_cast<std::size_t>(s)); }
  std::optional<Symbol> index(char c) const;
  const std::string& chars() const { return chars_; }
  bool operator==(const Alphabet&) const = default;

 private:
  std::string chars_;
};

/// A word over some alphabet, stored as dense symbol ids.
struct Word {
  std::vector<Symbol> syms;

  std::size_t size() const { return syms.size(); }
  bool empty() const { return syms.empty(); }
  auto operator<=>(const Word&) const = default;
};

Word intern(const std::string& text, const Alphabet& alphabet);
std::optional<Word> try_intern(const std::string& text,
                               const Alphabet& alphabet);
std::string spell(const Word& w, const Alphabet& alphabet);

/// Finite sample of positive and negative words sharing one alphabet.
/// Invariants: no empty word, the two classes are disjoint.
struct Sample {
  Alphabet alphabet;
  std::vector<Word> positives;
  std::vector<Word> negatives;

  std::size_t size() const { return positives.size() + negatives.size(); }
  void check() const;  // throws EmptyWordError / ConflictError
};

struct Transition {
  State from = 0;
  Symbol sym = 0;
  State to = 0;
  auto operator<=>(const Transition&) const = default;
};

/// One physical run of a word: the transition sequence taken.  An empty path
/// is the lambda path sitting at the initial state.
using PhysicalPath = std::vector<Transition>;

enum class Verdict { Accepted, Rejected, Inconclusive, Both };

/// Nondeterministic finite automaton with three sorts of states: accepting
/// (F+), rejecting (F-), and neutral.  The initial state is fixed to q1
/// (index 0).  F+ and F- must stay disjoint.
class Nfa3 {
 public:
  Nfa3() = default;
  Nfa3(int num_states, Alphabet alphabet);

  int num_states() const { return num_states_; }
  const Alphabet& alphabet() const { return alphabet_; }

  void set_accepting(State q);
  void set_rejecting(State q);
  bool is_accepting(State q) const { return sort_.at(q) == 1; }
  bool is_rejecting(State q) const { return sort_.at(q) == 2; }
  std::vector<State> accepting_states() const;
  std::vector<State> rejecting_states() const;

  void add_transition(State from, Symbol sym, State to);
  bool has_transition(State from, Symbol sym, State to) const;
  const std::vector<State>& targets(State from, Symbol sym) const;

  /// All transitions in (from, sym, to) order with stable indices; the same
  /// indices key the frequency tables built on top of this automaton.
  const std::vector<Transition>& transitions() const;
  std::optional<int> transition_index(State from, Symbol sym, State to) const;

 private:
  int num_states_ = 0;
  Alphabet alphabet_;
  std::vector<int> sort_;  // 0 neutral, 1 accepting, 2 rejecting
  std::vector<std::vector<std::vector<State>>> next_;  // [state][sym] sorted
  mutable std::vector<Transition> trans_cache_;
  mutable bool cache_valid_ = false;
};

/// All complete runs of `w` from the initial state.  Deterministic order
/// (depth-first, targets ascending).  Throws PathBudgetExceeded when more
/// than `budget` complete paths exist.
std::vector<PhysicalPath> enumerate_paths(
    const Nfa3& nfa, const Word& w, std::uint64_t budget = kDefaultPathBudget);

/// Same, starting from an arbitrary state.
std::vector<PhysicalPath> enumerate_paths_from(
    const Nfa3& nfa, State start, const Word& w,
    std::uint64_t budget = kDefaultPathBudget);

/// Accepted iff some run ends in F+ and none in F-; Rejected dually; Both
/// when runs reach both sorts; Inconclusive otherwise (including no run).
/// Computed by reachable-set simulation, so it is total and never trips the
/// path budget even when the run count is astronomical.
Verdict classify_word_3sort(const Nfa3& nfa, const Word& w);

/// Verdict for a word spelled over a foreign alphabet; symbols unknown to
/// the automaton kill every run.
Verdict classify_word_3sort(const Nfa3& nfa, const std::string& text);

/// True iff every positive word is Accepted and every negative word is
/// Rejected.  The sample may use its own alphabet; unknown symbols simply
/// have no transitions.
bool is_consistent(const Nfa3& nfa, const Sample& sample);

/// Plain-text persistence.  Round-trips bit-exactly.
std::string write_nfa(const Nfa3& nfa);
Nfa3 read_nfa(const std::string& text);

}  // namespace nfa3

#endif  // NFA3_AUTOMATON_HPP_
