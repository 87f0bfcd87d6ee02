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

#include "nfa3/formula.hpp"

namespace nfa3 {

const char* family_label(Family f) {
  switch (f) {
    case Family::FinalExclusion: return "final-exclusion";
    case Family::PosAccept: return "positive-accept";
    case Family::PosNoReject: return "positive-no-reject";
    case Family::NegReject: return "negative-reject";
    case Family::NegNoAccept: return "negative-no-accept";
    case Family::PrefixBase: return "prefix-base";
    case Family::PrefixStep: return "prefix-step";
    case Family::SuffixBase: return "suffix-base";
    case Family::SuffixStep: return "suffix-step";
    case Family::FinalSink: return "final-sink";
    case Family::DuplicateIntoAccept: return "duplicate-into-accept";
    case Family::DuplicateIntoReject: return "duplicate-into-reject";
    case Family::PossibleAcceptClean: return "possible-accept-clean";
    case Family::PossibleRejectClean: return "possible-reject-clean";
    case Family::PossibleAcceptWitness: return "possible-accept-witness";
    case Family::PossibleRejectWitness: return "possible-reject-witness";
    case Family::PosReachesPossible: return "positive-reaches-possible";
    case Family::NegReachesPossible: return "negative-reaches-possible";
    case Family::PossibleFinalExclusion: return "possible-final-exclusion";
  }
  return "?";
}

void Formula::add_clause(Family f, std::vector<Lit> lits) {
  Constraint c;
  c.shape = Constraint::Clause;
  c.family = f;
  c.lits = std::move(lits);
  constraints.push_back(std::move(c));
}

void Formula::add_assert(Family f, FNode node) {
  Constraint c;
  c.shape = Constraint::Assert;
  c.family = f;
  c.node = std::move(node);
  constraints.push_back(std::move(c));
}

void Formula::add_iff(Family f, Lit lhs, FNode rhs) {
  Constraint c;
  c.shape = Constraint::IffDef;
  c.family = f;
  c.lhs = lhs;
  c.node = std::move(rhs);
  constraints.push_back(std::move(c));
}

VarMap::VarMap(int k, int layout, int num_syms, bool with_possible_finals)
    : k_(k), layout_(layout), num_syms_(num_syms) {
  a_.resize(static_cast<std::size_t>(k));
  r_.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) a_[static_cast<std::size_t>(i)] = fresh();
  for (int i = 0; i < k; ++i) r_[static_cast<std::size_t>(i)] = fresh();
  if (with_possible_finals) {
    astar_.resize(static_cast<std::size_t>(k));
    rstar_.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) astar_[static_cast<std::size_t>(i)] = fresh();
    for (int i = 0; i < k; ++i) rstar_[static_cast<std::size_t>(i)] = fresh();
  }
  delta_.resize(static_cast<std::size_t>(num_syms) *
                static_cast<std::size_t>(layout) *
                static_cast<std::size_t>(layout));
  for (std::size_t idx = 0; idx < delta_.size(); ++idx) delta_[idx] = fresh();
}

int VarMap::transition(Symbol s, State i, State j) const {
  return delta_.at((static_cast<std::size_t>(s) * static_cast<std::size_t>(layout_) +
                    static_cast<std::size_t>(i)) *
                       static_cast<std::size_t>(layout_) +
                   static_cast<std::size_t>(j));
}

int VarMap::add_prefix(const Word& p) {
  auto [it, fresh_entry] =
      prefix_ids_.emplace(p, static_cast<int>(prefixes_.size()));
  if (fresh_entry) {
    prefixes_.push_back(p);
    prefix_vars_.emplace_back(static_cast<std::size_t>(layout_), 0);
  }
  return it->second;
}

int VarMap::prefix_id(const Word& p) const {
  auto it = prefix_ids_.find(p);
  return it == prefix_ids_.end() ? -1 : it->second;
}

int VarMap::ensure_prefix_var(int pid, State target) {
  int& v = prefix_vars_.at(static_cast<std::size_t>(pid))
               .at(static_cast<std::size_t>(target));
  if (v == 0) {
    v = fresh();
    ++n_prefix_vars_;
  }
  return v;
}

int VarMap::prefix_var(int pid, State target) const {
  return prefix_vars_.at(static_cast<std::size_t>(pid))
      .at(static_cast<std::size_t>(target));
}

int VarMap::add_suffix(const Word& v) {
  auto [it, fresh_entry] =
      suffix_ids_.emplace(v, static_cast<int>(suffixes_.size()));
  if (fresh_entry) {
    suffixes_.push_back(v);
    suffix_vars_.emplace_back(
        static_cast<std::size_t>(layout_) * static_cast<std::size_t>(layout_), 0);
  }
  return it->second;
}

int VarMap::suffix_id(const Word& v) const {
  auto it = suffix_ids_.find(v);
  return it == suffix_ids_.end() ? -1 : it->second;
}

std::size_t VarMap::slot(State from, State to) const {
  return static_cast<std::size_t>(from) * static_cast<std::size_t>(layout_) +
         static_cast<std::size_t>(to);
}

int VarMap::ensure_suffix_var(int sid, State from, State to) {
  int& v = suffix_vars_.at(static_cast<std::size_t>(sid)).at(slot(from, to));
  if (v == 0) {
    v = fresh();
    ++n_suffix_vars_;
  }
  return v;
}

int VarMap::suffix_var(int sid, State from, State to) const {
  return suffix_vars_.at(static_cast<std::size_t>(sid)).at(slot(from, to));
}

std::size_t VarMap::num_final_vars() const {
  return a_.size() + r_.size();
}

std::size_t VarMap::num_possible_vars() const {
  return astar_.size() + rstar_.size();
}

std::size_t VarMap::num_transition_vars() const { return delta_.size(); }

std::vector<CensusRow> constraint_census(const Formula& f, const VarMap& vars) {
  std::map<std::string, std::size_t> counts;
  for (const Constraint& c : f.constraints) counts[family_label(c.family)]++;
  std::vector<CensusRow> rows;
  for (const auto& [label, n] : counts) rows.push_back({label, n});
  rows.push_back({"var:final", vars.num_final_vars()});
  if (vars.has_possible_finals())
    rows.push_back({"var:possible-final", vars.num_possible_vars()});
  rows.push_back({"var:transition", vars.num_transition_vars()});
  rows.push_back({"var:prefix-path", vars.num_prefix_vars()});
  rows.push_back({"var:suffix-path", vars.num_suffix_vars()});
  return rows;
}

}  // namespace nfa3
