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

#include "nfa3/automaton.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace nfa3 {

Alphabet::Alphabet(std::string chars) : chars_(std::move(chars)) {
  std::sort(chars_.begin(), chars_.end());
  chars_.erase(std::unique(chars_.begin(), chars_.end()), chars_.end());
}

std::optional<Symbol> Alphabet::index(char c) const {
  auto it = std::lower_bound(chars_.begin(), chars_.end(), c);
  if (it == chars_.end() || *it != c) return std::nullopt;
  return static_cast<Symbol>(it - chars_.begin());
}

Word intern(const std::string& text, const Alphabet& alphabet) {
  auto w = try_intern(text, alphabet);
  if (!w) throw FormatError("word '" + text + "' leaves the alphabet");
  return *w;
}

std::optional<Word> try_intern(const std::string& text,
                               const Alphabet& alphabet) {
  Word w;
  w.syms.reserve(text.size());
  for (char c : text) {
    auto s = alphabet.index(c);
    if (!s) return std::nullopt;
    w.syms.push_back(*s);
  }
  return w;
}

std::string spell(const Word& w, const Alphabet& alphabet) {
  std::string out;
  out.reserve(w.size());
  for (Symbol s : w.syms) out.push_back(alphabet.at(s));
  return out;
}

void Sample::check() const {
  for (const auto* side : {&positives, &negatives})
    for (const Word& w : *side)
      if (w.empty()) throw EmptyWordError("empty word in sample");
  std::set<Word> pos(positives.begin(), positives.end());
  for (const Word& w : negatives)
    if (pos.count(w))
      throw ConflictError("word '" + spell(w, alphabet) +
                          "' labeled both positive and negative");
}

Nfa3::Nfa3(int num_states, Alphabet alphabet)
    : num_states_(num_states),
      alphabet_(std::move(alphabet)),
      sort_(static_cast<std::size_t>(num_states), 0),
      next_(static_cast<std::size_t>(num_states),
            std::vector<std::vector<State>>(
                static_cast<std::size_t>(alphabet_.size()))) {}

void Nfa3::set_accepting(State q) {
  if (sort_.at(q) == 2) throw ConflictError("state both accepting and rejecting");
  sort_.at(q) = 1;
}

void Nfa3::set_rejecting(State q) {
  if (sort_.at(q) == 1) throw ConflictError("state both accepting and rejecting");
  sort_.at(q) = 2;
}

std::vector<State> Nfa3::accepting_states() const {
  std::vector<State> out;
  for (State q = 0; q < num_states_; ++q)
    if (sort_[static_cast<std::size_t>(q)] == 1) out.push_back(q);
  return out;
}

std::vector<State> Nfa3::rejecting_states() const {
  std::vector<State> out;
  for (State q = 0; q < num_states_; ++q)
    if (sort_[static_cast<std::size_t>(q)] == 2) out.push_back(q);
  return out;
}

void Nfa3::add_transition(State from, Symbol sym, State to) {
  auto& row = next_.at(static_cast<std::size_t>(from))
                  .at(static_cast<std::size_t>(sym));
  auto it = std::lower_bound(row.begin(), row.end(), to);
  if (it != row.end() && *it == to) return;
  row.insert(it, to);
  cache_valid_ = false;
}

bool Nfa3::has_transition(State from, Symbol sym, State to) const {
  const auto& row = targets(from, sym);
  return std::binary_search(row.begin(), row.end(), to);
}

const std::vector<State>& Nfa3::targets(State from, Symbol sym) const {
  return next_.at(static_cast<std::size_t>(from))
      .at(static_cast<std::size_t>(sym));
}

const std::vector<Transition>& Nfa3::transitions() const {
  if (!cache_valid_) {
    trans_cache_.clear();
    for (State q = 0; q < num_states_; ++q)
      for (Symbol s = 0; s < alphabet_.size(); ++s)
        for (State t : targets(q, s)) trans_cache_.push_back({q, s, t});
    cache_valid_ = true;
  }
  return trans_cache_;
}

std::optional<int> Nfa3::transition_index(State from, Symbol sym,
                                          State to) const {
  const auto& all = transitions();
  Transition key{from, sym, to};
  auto it = std::lower_bound(all.begin(), all.end(), key);
  if (it == all.end() || *it != key) return std::nullopt;
  return static_cast<int>(it - all.begin());
}

namespace {

// States at position p (p symbols consumed) from which the rest of the word
// can still be completed.  Pruning dead branches up front bounds the DFS by
// the number of *complete* paths, which is what the budget measures.
std::vector<std::vector<char>> alive_table(const Nfa3& nfa, const Word& w) {
  const std::size_t n = w.size();
  std::vector<std::vector<char>> alive(
      n + 1, std::vector<char>(static_cast<std::size_t>(nfa.num_states()), 0));
  for (State q = 0; q < nfa.num_states(); ++q) alive[n][static_cast<std::size_t>(q)] = 1;
  for (std::size_t p = n; p-- > 0;) {
    for (State q = 0; q < nfa.num_states(); ++q)
      for (State t : nfa.targets(q, w.syms[p]))
        if (alive[p + 1][static_cast<std::size_t>(t)]) {
          alive[p][static_cast<std::size_t>(q)] = 1;
          break;
        }
  }
  return alive;
}

void dfs_paths(const Nfa3& nfa, const Word& w,
               const std::vector<std::vector<char>>& alive, State q,
               std::size_t pos, PhysicalPath& cur,
               std::vector<PhysicalPath>& out, std::uint64_t budget) {
  if (pos == w.size()) {
    if (out.size() >= budget)
      throw PathBudgetExceeded("more than " + std::to_string(budget) +
                               " paths for one word");
    out.push_back(cur);
    return;
  }
  for (State t : nfa.targets(q, w.syms[pos])) {
    if (!alive[pos + 1][static_cast<std::size_t>(t)]) continue;
    cur.push_back({q, w.syms[pos], t});
    dfs_paths(nfa, w, alive, t, pos + 1, cur, out, budget);
    cur.pop_back();
  }
}

}  // namespace

std::vector<PhysicalPath> enumerate_paths(const Nfa3& nfa, const Word& w,
                                          std::uint64_t budget) {
  return enumerate_paths_from(nfa, 0, w, budget);
}

std::vector<PhysicalPath> enumerate_paths_from(const Nfa3& nfa, State start,
                                               const Word& w,
                                               std::uint64_t budget) {
  auto alive = alive_table(nfa, w);
  std::vector<PhysicalPath> out;
  if (!alive[0][static_cast<std::size_t>(start)]) return out;
  PhysicalPath cur;
  dfs_paths(nfa, w, alive, start, 0, cur, out, budget);
  return out;
}

namespace {

Verdict verdict_from_reach(const Nfa3& nfa, const std::vector<char>& reach) {
  bool acc = false, rej = false;
  for (State q = 0; q < nfa.num_states(); ++q) {
    if (!reach[static_cast<std::size_t>(q)]) continue;
    acc = acc || nfa.is_accepting(q);
    rej = rej || nfa.is_rejecting(q);
  }
  if (acc && rej) return Verdict::Both;
  if (acc) return Verdict::Accepted;
  if (rej) return Verdict::Rejected;
  return Verdict::Inconclusive;
}

}  // namespace

Verdict classify_word_3sort(const Nfa3& nfa, const Word& w) {
  std::vector<char> reach(static_cast<std::size_t>(nfa.num_states()), 0);
  reach[0] = 1;
  for (Symbol s : w.syms) {
    std::vector<char> next(reach.size(), 0);
    for (State q = 0; q < nfa.num_states(); ++q)
      if (reach[static_cast<std::size_t>(q)])
        for (State t : nfa.targets(q, s)) next[static_cast<std::size_t>(t)] = 1;
    reach.swap(next);
  }
  return verdict_from_reach(nfa, reach);
}

Verdict classify_word_3sort(const Nfa3& nfa, const std::string& text) {
  auto w = try_intern(text, nfa.alphabet());
  if (!w) return Verdict::Inconclusive;  // some symbol has no transitions
  return classify_word_3sort(nfa, *w);
}

bool is_consistent(const Nfa3& nfa, const Sample& sample) {
  for (const Word& w : sample.positives) {
    auto mapped = try_intern(spell(w, sample.alphabet), nfa.alphabet());
    if (!mapped || classify_word_3sort(nfa, *mapped) != Verdict::Accepted)
      return false;
  }
  for (const Word& w : sample.negatives) {
    auto mapped = try_intern(spell(w, sample.alphabet), nfa.alphabet());
    if (!mapped || classify_word_3sort(nfa, *mapped) != Verdict::Rejected)
      return false;
  }
  return true;
}

std::string write_nfa(const Nfa3& nfa) {
  std::ostringstream out;
  out << "k " << nfa.num_states() << " alphabet " << nfa.alphabet().chars()
      << "\n";
  for (State q : nfa.accepting_states()) out << "accept " << q + 1 << "\n";
  for (State q : nfa.rejecting_states()) out << "reject " << q + 1 << "\n";
  for (const Transition& t : nfa.transitions())
    out << "trans " << t.from + 1 << " " << nfa.alphabet().at(t.sym) << " "
        << t.to + 1 << "\n";
  return out.str();
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

State parse_state(const std::string& tok, int k) {
  auto v = parse_uint(tok, "state index");
  if (v < 1 || v > static_cast<std::uint64_t>(k))
    throw FormatError("state index out of range: " + tok);
  return static_cast<State>(v - 1);
}

}  // namespace

Nfa3 read_nfa(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Nfa3 nfa;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto toks = split_ws(line);
    if (!have_header) {
      if (toks.size() < 3 || toks[0] != "k" || toks[2] != "alphabet")
        throw FormatError("bad automaton header: " + line);
      int k = static_cast<int>(parse_uint(toks[1], "state count"));
      std::string chars = toks.size() >= 4 ? toks[3] : "";
      nfa = Nfa3(k, Alphabet(std::move(chars)));
      have_header = true;
      continue;
    }
    if (toks[0] == "accept" && toks.size() == 2) {
      nfa.set_accepting(parse_state(toks[1], nfa.num_states()));
    } else if (toks[0] == "reject" && toks.size() == 2) {
      nfa.set_rejecting(parse_state(toks[1], nfa.num_states()));
    } else if (toks[0] == "trans" && toks.size() == 4) {
      if (toks[2].size() != 1) throw FormatError("bad symbol: " + toks[2]);
      auto sym = nfa.alphabet().index(toks[2][0]);
      if (!sym) throw FormatError("symbol outside alphabet: " + toks[2]);
      nfa.add_transition(parse_state(toks[1], nfa.num_states()), *sym,
                         parse_state(toks[3], nfa.num_states()));
    } else {
      throw FormatError("bad automaton line: " + line);
    }
  }
  if (!have_header) throw FormatError("missing automaton header");
  return nfa;
}

}  // namespace nfa3
