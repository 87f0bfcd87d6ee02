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

#ifndef NFA3_FORMULA_HPP_
#define NFA3_FORMULA_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nfa3/automaton.hpp"

namespace nfa3 {

/// DIMACS-style literal: +v asserts variable v, -v its negation; v >= 1.
using Lit = int;

inline Lit pos(int var) { return var; }
inline Lit neg(int var) { return -var; }

/// Constraint families, used to label the census of an encoding.
enum class Family {
  FinalExclusion,          // a state is not both accepting and rejecting
  PosAccept,               // positive word reaches an accepting final
  PosNoReject,             // positive word avoids rejecting finals
  NegReject,               // negative word reaches a rejecting final
  NegNoAccept,             // negative word avoids accepting finals
  PrefixBase,              // single-symbol prefix path definition
  PrefixStep,              // prefix path recursion
  SuffixBase,              // single-symbol suffix path definition
  SuffixStep,              // suffix path recursion
  FinalSink,               // the two dedicated finals have no outgoing arcs
  DuplicateIntoAccept,     // arc into the accepting final duplicates a core arc
  DuplicateIntoReject,     // arc into the rejecting final duplicates a core arc
  PossibleAcceptClean,     // possible-accepting state untouched by negatives
  PossibleRejectClean,     // possible-rejecting state untouched by positives
  PossibleAcceptWitness,   // some positive word terminates in the state
  PossibleRejectWitness,   // some negative word terminates in the state
  PosReachesPossible,      // each positive word ends in a possible-accepting state
  NegReachesPossible,      // each negative word ends in a possible-rejecting state
  PossibleFinalExclusion,  // possible-accepting and -rejecting are disjoint
};

const char* family_label(Family f);

/// Structural formula node: a literal, a conjunction, or a disjunction.
struct FNode {
  enum Kind { Leaf, And, Or } kind = Leaf;
  Lit lit = 0;
  std::vector<FNode> kids;

  static FNode leaf(Lit l) {
    FNode n;
    n.lit = l;
    return n;
  }
  static FNode make_and(std::vector<FNode> kids) {
    FNode n;
    n.kind = And;
    n.kids = std::move(kids);
    return n;
  }
  static FNode make_or(std::vector<FNode> kids) {
    FNode n;
    n.kind = Or;
    n.kids = std::move(kids);
    return n;
  }
};

/// One asserted constraint.  Three shapes keep the common cases cheap to
/// lower: a plain clause, an asserted node, or a definition lit <-> node.
struct Constraint {
  enum Shape { Clause, Assert, IffDef } shape = Clause;
  Family family = Family::FinalExclusion;
  std::vector<Lit> lits;  // Shape::Clause
  Lit lhs = 0;            // Shape::IffDef
  FNode node;             // Assert / IffDef right-hand side
};

/// Conjunction of constraints over variables 1..num_vars.
struct Formula {
  int num_vars = 0;
  std::vector<Constraint> constraints;

  void add_clause(Family f, std::vector<Lit> lits);
  void add_assert(Family f, FNode node);
  void add_iff(Family f, Lit lhs, FNode rhs);
};

/// Maps the encoding's semantic variables to solver ids (1-based, dense).
/// Prefix-path variables are keyed (prefix word, target state); suffix-path
/// variables (suffix word, source, target).  Absent combinations return 0.
class VarMap {
 public:
  VarMap() = default;
  /// `layout` is the number of states carrying transition rows: k for the
  /// plain model, k+2 when the two dedicated finals are present.
  VarMap(int k, int layout, int num_syms, bool with_possible_finals);

  int k() const { return k_; }
  int layout() const { return layout_; }
  int num_syms() const { return num_syms_; }
  bool has_possible_finals() const { return !astar_.empty(); }
  int count() const { return count_; }

  int final_accept(State i) const { return a_.at(static_cast<std::size_t>(i)); }
  int final_reject(State i) const { return r_.at(static_cast<std::size_t>(i)); }
  int possible_accept(State i) const { return astar_.at(static_cast<std::size_t>(i)); }
  int possible_reject(State i) const { return rstar_.at(static_cast<std::size_t>(i)); }
  int transition(Symbol s, State i, State j) const;

  int add_prefix(const Word& p);              ///< registers p, returns its id
  int prefix_id(const Word& p) const;         ///< -1 when unknown
  int ensure_prefix_var(int pid, State target);
  int prefix_var(int pid, State target) const;
  const std::vector<Word>& prefixes() const { return prefixes_; }

  int add_suffix(const Word& v);
  int suffix_id(const Word& v) const;
  int ensure_suffix_var(int sid, State from, State to);
  int suffix_var(int sid, State from, State to) const;
  const std::vector<Word>& suffixes() const { return suffixes_; }

  std::size_t num_final_vars() const;
  std::size_t num_possible_vars() const;
  std::size_t num_transition_vars() const;
  std::size_t num_prefix_vars() const { return n_prefix_vars_; }
  std::size_t num_suffix_vars() const { return n_suffix_vars_; }

 private:
  int fresh() { return ++count_; }
  std::size_t slot(State from, State to) const;

  int k_ = 0, layout_ = 0, num_syms_ = 0, count_ = 0;
  std::vector<int> a_, r_, astar_, rstar_;
  std::vector<int> delta_;  // [sym][from][to] over layout states
  std::vector<Word> prefixes_;
  std::map<Word, int> prefix_ids_;
  std::vector<std::vector<int>> prefix_vars_;  // [pid][target]
  std::vector<Word> suffixes_;
  std::map<Word, int> suffix_ids_;
  std::vector<std::vector<int>> suffix_vars_;  // [sid][slot(from,to)]
  std::size_t n_prefix_vars_ = 0, n_suffix_vars_ = 0;
};

struct CensusRow {
  std::string family;
  std::size_t count = 0;
};

/// Per-family constraint counts followed by per-kind variable counts
/// (rows prefixed "var:").  Variable rows sum to VarMap::count().
std::vector<CensusRow> constraint_census(const Formula& f, const VarMap& vars);

}  // namespace nfa3

#endif  // NFA3_FORMULA_HPP_
