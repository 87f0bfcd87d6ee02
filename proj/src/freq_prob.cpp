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

#include "nfa3/freq_prob.hpp"

#include <cstdlib>
#include <sstream>

namespace nfa3 {

WeightConfig WeightConfig::from_mask(unsigned mask) {
  WeightConfig w;
  w.f_pos_hit = (mask >> 0) & 1;
  w.f_pos_unk = (mask >> 1) & 1;
  w.f_neg_hit = (mask >> 2) & 1;
  w.f_neg_unk = (mask >> 3) & 1;
  w.d_pos_hit = (mask >> 4) & 1;
  w.d_pos_unk = (mask >> 5) & 1;
  w.d_neg_hit = (mask >> 6) & 1;
  w.d_neg_unk = (mask >> 7) & 1;
  return w;
}

namespace {

// Counts runs of one word, accumulating terminal-state and per-transition
// occurrence counts into the hit/unk tables of the word's polarity.
struct RunCounter {
  const Nfa3& nfa;
  const Word& w;
  std::uint64_t budget;
  std::uint64_t done = 0;
  std::vector<std::vector<char>> alive;
  // adjacency with transition ids: (target, transition index)
  const std::vector<std::vector<std::pair<State, int>>>& adj;
  std::vector<int> stack;  // transition indices of the current run
  std::vector<std::uint64_t>*f_hit, *f_unk, *d_hit, *d_unk;
  bool want_accepting;  // terminal sort counting as "hit"

  void complete(State q) {
    if (done >= budget)
      throw PathBudgetExceeded("more than " + std::to_string(budget) +
                               " paths for one word");
    ++done;
    bool hit = want_accepting ? nfa.is_accepting(q) : nfa.is_rejecting(q);
    bool miss = want_accepting ? nfa.is_rejecting(q) : nfa.is_accepting(q);
    if (miss) return;  // wrong-sort terminals contribute nothing
    auto* f = hit ? f_hit : f_unk;
    auto* d = hit ? d_hit : d_unk;
    (*f)[static_cast<std::size_t>(q)] += 1;
    for (int t : stack) (*d)[static_cast<std::size_t>(t)] += 1;
  }

  void dfs(State q, std::size_t pos) {
    if (pos == w.size()) {
      complete(q);
      return;
    }
    std::size_t base =
        static_cast<std::size_t>(q) * static_cast<std::size_t>(nfa.alphabet().size());
    for (const auto& [to, tid] : adj[base + static_cast<std::size_t>(w.syms[pos])]) {
      if (!alive[pos + 1][static_cast<std::size_t>(to)]) continue;
      stack.push_back(tid);
      dfs(to, pos + 1);
      stack.pop_back();
    }
  }
};

std::vector<std::vector<std::pair<State, int>>> build_adj(const Nfa3& nfa) {
  std::vector<std::vector<std::pair<State, int>>> adj(
      static_cast<std::size_t>(nfa.num_states()) *
      static_cast<std::size_t>(nfa.alphabet().size()));
  const auto& all = nfa.transitions();
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Transition& t = all[i];
    adj[static_cast<std::size_t>(t.from) *
            static_cast<std::size_t>(nfa.alphabet().size()) +
        static_cast<std::size_t>(t.sym)]
        .emplace_back(t.to, static_cast<int>(i));
  }
  return adj;
}

std::vector<std::vector<char>> alive_table(const Nfa3& nfa, const Word& w) {
  const std::size_t n = w.size();
  std::vector<std::vector<char>> alive(
      n + 1, std::vector<char>(static_cast<std::size_t>(nfa.num_states()), 0));
  for (State q = 0; q < nfa.num_states(); ++q)
    alive[n][static_cast<std::size_t>(q)] = 1;
  for (std::size_t p = n; p-- > 0;)
    for (State q = 0; q < nfa.num_states(); ++q)
      for (State t : nfa.targets(q, w.syms[p]))
        if (alive[p + 1][static_cast<std::size_t>(t)]) {
          alive[p][static_cast<std::size_t>(q)] = 1;
          break;
        }
  return alive;
}

}  // namespace

FrequencyTables compute_frequencies(const Nfa3& nfa, const Sample& sample,
                                    std::uint64_t budget) {
  const std::size_t ns = static_cast<std::size_t>(nfa.num_states());
  const std::size_t nt = nfa.transitions().size();
  FrequencyTables ft;
  ft.f_pos_hit.assign(ns, 0);
  ft.f_pos_unk.assign(ns, 0);
  ft.f_neg_hit.assign(ns, 0);
  ft.f_neg_unk.assign(ns, 0);
  ft.d_pos_hit.assign(nt, 0);
  ft.d_pos_unk.assign(nt, 0);
  ft.d_neg_hit.assign(nt, 0);
  ft.d_neg_unk.assign(nt, 0);

  auto adj = build_adj(nfa);
  auto count_side = [&](const std::vector<Word>& words, bool positive) {
    for (const Word& raw : words) {
      auto mapped = try_intern(spell(raw, sample.alphabet), nfa.alphabet());
      if (!mapped) continue;  // no runs at all
      RunCounter rc{nfa,
                    *mapped,
                    budget,
                    0,
                    alive_table(nfa, *mapped),
                    adj,
                    {},
                    positive ? &ft.f_pos_hit : &ft.f_neg_hit,
                    positive ? &ft.f_pos_unk : &ft.f_neg_unk,
                    positive ? &ft.d_pos_hit : &ft.d_neg_hit,
                    positive ? &ft.d_pos_unk : &ft.d_neg_unk,
                    positive};
      if (!rc.alive[0][0]) continue;
      rc.dfs(0, 0);
    }
  };
  count_side(sample.positives, true);
  count_side(sample.negatives, false);
  return ft;
}

WeightedNfa build_wffa(const Nfa3& nfa, const FrequencyTables& freq,
                       const WeightConfig& w) {
  WeightedNfa out;
  const std::size_t ns = static_cast<std::size_t>(nfa.num_states());
  const std::size_t nt = nfa.transitions().size();
  out.f_pos.assign(ns, 0);
  out.f_neg.assign(ns, 0);
  out.d_pos.assign(nt, 0);
  out.d_neg.assign(nt, 0);
  for (std::size_t q = 0; q < ns; ++q) {
    State st = static_cast<State>(q);
    // A state's mass comes from the sort it actually has: finals of the
    // matching polarity carry hit mass, neutral states carry unk mass, and
    // finals of the opposite polarity carry none.
    if (nfa.is_accepting(st))
      out.f_pos[q] = w.f_pos_hit * static_cast<double>(freq.f_pos_hit[q]);
    else if (!nfa.is_rejecting(st))
      out.f_pos[q] = w.f_pos_unk * static_cast<double>(freq.f_pos_unk[q]);
    if (nfa.is_rejecting(st))
      out.f_neg[q] = w.f_neg_hit * static_cast<double>(freq.f_neg_hit[q]);
    else if (!nfa.is_accepting(st))
      out.f_neg[q] = w.f_neg_unk * static_cast<double>(freq.f_neg_unk[q]);
  }
  for (std::size_t t = 0; t < nt; ++t) {
    out.d_pos[t] = w.d_pos_hit * static_cast<double>(freq.d_pos_hit[t]) +
                   w.d_pos_unk * static_cast<double>(freq.d_pos_unk[t]);
    out.d_neg[t] = w.d_neg_hit * static_cast<double>(freq.d_neg_hit[t]) +
                   w.d_neg_unk * static_cast<double>(freq.d_neg_unk[t]);
  }
  return out;
}

ProbabilisticNfa::ProbabilisticNfa(int num_states, Alphabet alphabet,
                                   std::vector<Transition> transitions)
    : num_states_(num_states),
      alphabet_(std::move(alphabet)),
      transitions_(std::move(transitions)) {
  by_sym_.assign(static_cast<std::size_t>(num_states_),
                 std::vector<std::vector<int>>(
                     static_cast<std::size_t>(alphabet_.size())));
  by_state_.assign(static_cast<std::size_t>(num_states_), {});
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    const Transition& t = transitions_[i];
    by_sym_.at(static_cast<std::size_t>(t.from))
        .at(static_cast<std::size_t>(t.sym))
        .push_back(static_cast<int>(i));
    by_state_.at(static_cast<std::size_t>(t.from)).push_back(static_cast<int>(i));
  }
  gf_pos.assign(static_cast<std::size_t>(num_states_), 0);
  gf_neg.assign(static_cast<std::size_t>(num_states_), 0);
  gd_pos.assign(transitions_.size(), 0);
  gd_neg.assign(transitions_.size(), 0);
}

const std::vector<int>& ProbabilisticNfa::arcs(State q, Symbol s) const {
  return by_sym_.at(static_cast<std::size_t>(q)).at(static_cast<std::size_t>(s));
}

const std::vector<int>& ProbabilisticNfa::arcs_out(State q) const {
  return by_state_.at(static_cast<std::size_t>(q));
}

ProbabilisticNfa to_probabilistic(const Nfa3& nfa, const WeightedNfa& wffa) {
  ProbabilisticNfa pnfa(nfa.num_states(), nfa.alphabet(), nfa.transitions());
  for (State q = 0; q < nfa.num_states(); ++q) {
    std::size_t uq = static_cast<std::size_t>(q);
    double den_pos = wffa.f_pos[uq], den_neg = wffa.f_neg[uq];
    for (int t : pnfa.arcs_out(q)) {
      den_pos += wffa.d_pos[static_cast<std::size_t>(t)];
      den_neg += wffa.d_neg[static_cast<std::size_t>(t)];
    }
    if (den_pos > 0) {
      pnfa.gf_pos[uq] = wffa.f_pos[uq] / den_pos;
      for (int t : pnfa.arcs_out(q))
        pnfa.gd_pos[static_cast<std::size_t>(t)] =
            wffa.d_pos[static_cast<std::size_t>(t)] / den_pos;
    }
    if (den_neg > 0) {
      pnfa.gf_neg[uq] = wffa.f_neg[uq] / den_neg;
      for (int t : pnfa.arcs_out(q))
        pnfa.gd_neg[static_cast<std::size_t>(t)] =
            wffa.d_neg[static_cast<std::size_t>(t)] / den_neg;
    }
  }
  return pnfa;
}

std::string write_pnfa(const ProbabilisticNfa& pnfa) {
  std::ostringstream out;
  out << "k " << pnfa.num_states() << " alphabet " << pnfa.alphabet().chars()
      << "\n";
  for (const Transition& t : pnfa.transitions())
    out << "trans " << t.from + 1 << " " << pnfa.alphabet().at(t.sym) << " "
        << t.to + 1 << "\n";
  for (State q = 0; q < pnfa.num_states(); ++q)
    out << "pfinal+ " << q + 1 << " "
        << format_double(pnfa.gf_pos[static_cast<std::size_t>(q)]) << "\n";
  for (State q = 0; q < pnfa.num_states(); ++q)
    out << "pfinal- " << q + 1 << " "
        << format_double(pnfa.gf_neg[static_cast<std::size_t>(q)]) << "\n";
  for (std::size_t i = 0; i < pnfa.transitions().size(); ++i) {
    const Transition& t = pnfa.transitions()[i];
    out << "ptrans+ " << t.from + 1 << " " << pnfa.alphabet().at(t.sym) << " "
        << t.to + 1 << " " << format_double(pnfa.gd_pos[i]) << "\n";
  }
  for (std::size_t i = 0; i < pnfa.transitions().size(); ++i) {
    const Transition& t = pnfa.transitions()[i];
    out << "ptrans- " << t.from + 1 << " " << pnfa.alphabet().at(t.sym) << " "
        << t.to + 1 << " " << format_double(pnfa.gd_neg[i]) << "\n";
  }
  return out.str();
}

namespace {

double parse_double(const std::string& tok) {
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end == nullptr || *end != '\0')
    throw FormatError("bad number: " + tok);
  return v;
}

}  // namespace

ProbabilisticNfa read_pnfa(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int k = -1;
  Alphabet alphabet;
  std::vector<Transition> trans;
  struct Val {
    std::string kind;
    Transition t;
    State q;
    double v;
  };
  std::vector<Val> values;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (k < 0) {
      std::string alpha_kw, chars;
      std::string ktok;
      if (tag != "k" || !(ls >> ktok >> alpha_kw) || alpha_kw != "alphabet")
        throw FormatError("bad header: " + line);
      ls >> chars;
      k = static_cast<int>(parse_uint(ktok, "state count"));
      alphabet = Alphabet(chars);
      continue;
    }
    auto read_state = [&](const std::string& tok) {
      auto v = parse_uint(tok, "state index");
      if (v < 1 || v > static_cast<std::uint64_t>(k))
        throw FormatError("state index out of range: " + tok);
      return static_cast<State>(v - 1);
    };
    auto read_sym = [&](const std::string& tok) {
      if (tok.size() != 1) throw FormatError("bad symbol: " + tok);
      auto s = alphabet.index(tok[0]);
      if (!s) throw FormatError("symbol outside alphabet: " + tok);
      return *s;
    };
    if (tag == "trans") {
      std::string a, c, b;
      if (!(ls >> a >> c >> b)) throw FormatError("bad line: " + line);
      trans.push_back({read_state(a), read_sym(c), read_state(b)});
    } else if (tag == "pfinal+" || tag == "pfinal-") {
      std::string q, v;
      if (!(ls >> q >> v)) throw FormatError("bad line: " + line);
      values.push_back({tag, {}, read_state(q), parse_double(v)});
    } else if (tag == "ptrans+" || tag == "ptrans-") {
      std::string a, c, b, v;
      if (!(ls >> a >> c >> b >> v)) throw FormatError("bad line: " + line);
      values.push_back(
          {tag, {read_state(a), read_sym(c), read_state(b)}, 0, parse_double(v)});
    } else {
      throw FormatError("bad line: " + line);
    }
  }
  if (k < 0) throw FormatError("missing header");
  ProbabilisticNfa pnfa(k, alphabet, trans);
  auto tidx = [&](const Transition& t) {
    for (std::size_t i = 0; i < trans.size(); ++i)
      if (trans[i] == t) return i;
    throw FormatError("probability for unknown transition");
  };
  for (const auto& val : values) {
    if (val.kind == "pfinal+")
      pnfa.gf_pos.at(static_cast<std::size_t>(val.q)) = val.v;
    else if (val.kind == "pfinal-")
      pnfa.gf_neg.at(static_cast<std::size_t>(val.q)) = val.v;
    else if (val.kind == "ptrans+")
      pnfa.gd_pos.at(tidx(val.t)) = val.v;
    else
      pnfa.gd_neg.at(tidx(val.t)) = val.v;
  }
  return pnfa;
}

}  // namespace nfa3
