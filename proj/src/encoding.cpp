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

#include "nfa3/encoding.hpp"

#include <algorithm>
#include <set>

namespace nfa3 {

namespace {

struct CutWord {
  const Word* w;
  std::size_t cut;
  bool positive;
};

std::vector<CutWord> cut_words(const Sample& sample, const Splitting& split) {
  if (split.pos_cut.size() != sample.positives.size() ||
      split.neg_cut.size() != sample.negatives.size())
    throw LengthMismatch("splitting does not match sample");
  std::vector<CutWord> out;
  for (std::size_t i = 0; i < sample.positives.size(); ++i) {
    if (split.pos_cut[i] > sample.positives[i].size())
      throw LengthMismatch("cut beyond word end");
    out.push_back({&sample.positives[i], split.pos_cut[i], true});
  }
  for (std::size_t i = 0; i < sample.negatives.size(); ++i) {
    if (split.neg_cut[i] > sample.negatives[i].size())
      throw LengthMismatch("cut beyond word end");
    out.push_back({&sample.negatives[i], split.neg_cut[i], false});
  }
  return out;
}

Word slice(const Word& w, std::size_t from, std::size_t to) {
  Word out;
  out.syms.assign(w.syms.begin() + static_cast<long>(from),
                  w.syms.begin() + static_cast<long>(to));
  return out;
}

// Prefix/suffix ids in sorted word order so variable numbering does not
// depend on sample order quirks.
std::vector<int> sorted_ids(const std::vector<Word>& words) {
  std::vector<int> ids(words.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    return words[static_cast<std::size_t>(a)] < words[static_cast<std::size_t>(b)];
  });
  return ids;
}

void check_inputs(const Sample& sample, int k) {
  if (k < 1) throw Error("state count must be at least 1");
  sample.check();
  if (sample.size() == 0) throw EmptySample("no sample words to encode");
}

}  // namespace

EncodeResult encode_core_k(const Sample& sample, const Splitting& splitting,
                           int k) {
  check_inputs(sample, k);
  auto words = cut_words(sample, splitting);
  VarMap vars(k, k, sample.alphabet.size(), /*with_possible_finals=*/false);

  for (const CutWord& cw : words) {
    for (std::size_t t = 1; t <= cw.cut; ++t) vars.add_prefix(slice(*cw.w, 0, t));
    for (std::size_t t = cw.cut; t < cw.w->size(); ++t)
      vars.add_suffix(slice(*cw.w, t, cw.w->size()));
  }
  for (int pid : sorted_ids(vars.prefixes()))
    for (State i = 0; i < k; ++i) vars.ensure_prefix_var(pid, i);
  for (int sid : sorted_ids(vars.suffixes()))
    for (State i = 0; i < k; ++i)
      for (State j = 0; j < k; ++j) vars.ensure_suffix_var(sid, i, j);

  Formula f;

  // No state is both accepting and rejecting.
  for (State i = 0; i < k; ++i)
    f.add_clause(Family::FinalExclusion,
                 {neg(vars.final_accept(i)), neg(vars.final_reject(i))});

  // Prefix-path definitions.  A length-1 prefix is exactly one arc from the
  // initial state; longer ones chain through any intermediate state.
  for (int pid : sorted_ids(vars.prefixes())) {
    const Word& p = vars.prefixes()[static_cast<std::size_t>(pid)];
    if (p.size() == 1) {
      for (State i = 0; i < k; ++i)
        f.add_iff(Family::PrefixBase, vars.prefix_var(pid, i),
                  FNode::leaf(pos(vars.transition(p.syms[0], 0, i))));
    } else {
      Word parent = slice(p, 0, p.size() - 1);
      int xid = vars.prefix_id(parent);
      Symbol s = p.syms.back();
      for (State i = 0; i < k; ++i) {
        std::vector<FNode> terms;
        for (State j = 0; j < k; ++j)
          terms.push_back(FNode::make_and(
              {FNode::leaf(pos(vars.prefix_var(xid, j))),
               FNode::leaf(pos(vars.transition(s, j, i)))}));
        f.add_iff(Family::PrefixStep, vars.prefix_var(pid, i),
                  FNode::make_or(std::move(terms)));
      }
    }
  }

  // Suffix-path definitions, between every state pair.
  for (int sid : sorted_ids(vars.suffixes())) {
    const Word& v = vars.suffixes()[static_cast<std::size_t>(sid)];
    if (v.size() == 1) {
      for (State i = 0; i < k; ++i)
        for (State j = 0; j < k; ++j)
          f.add_iff(Family::SuffixBase, vars.suffix_var(sid, i, j),
                    FNode::leaf(pos(vars.transition(v.syms[0], i, j))));
    } else {
      Word rest = slice(v, 1, v.size());
      int xid = vars.suffix_id(rest);
      Symbol s = v.syms[0];
      for (State i = 0; i < k; ++i)
        for (State j = 0; j < k; ++j) {
          std::vector<FNode> terms;
          for (State l = 0; l < k; ++l)
            terms.push_back(FNode::make_and(
                {FNode::leaf(pos(vars.transition(s, i, l))),
                 FNode::leaf(pos(vars.suffix_var(xid, l, j)))}));
          f.add_iff(Family::SuffixStep, vars.suffix_var(sid, i, j),
                    FNode::make_or(std::move(terms)));
        }
    }
  }

  // Word constraints.  Runs are the prefix path joined with the suffix path;
  // an empty part degenerates to the other one (an empty prefix starts the
  // suffix at the initial state, an empty suffix ends at the prefix target).
  for (const CutWord& cw : words) {
    auto fa = [&](State i) {  // final of the word's own polarity
      return cw.positive ? vars.final_accept(i) : vars.final_reject(i);
    };
    auto fr = [&](State i) {  // final of the opposite polarity
      return cw.positive ? vars.final_reject(i) : vars.final_accept(i);
    };
    Family reach = cw.positive ? Family::PosAccept : Family::NegReject;
    Family avoid = cw.positive ? Family::PosNoReject : Family::NegNoAccept;

    if (cw.cut == cw.w->size()) {
      int pid = vars.prefix_id(*cw.w);
      std::vector<FNode> terms;
      for (State i = 0; i < k; ++i)
        terms.push_back(
            FNode::make_and({FNode::leaf(pos(vars.prefix_var(pid, i))),
                             FNode::leaf(pos(fa(i)))}));
      f.add_assert(reach, FNode::make_or(std::move(terms)));
      for (State i = 0; i < k; ++i)
        f.add_clause(avoid, {neg(vars.prefix_var(pid, i)), neg(fr(i))});
    } else if (cw.cut == 0) {
      int sid = vars.suffix_id(*cw.w);
      std::vector<FNode> terms;
      for (State i = 0; i < k; ++i)
        terms.push_back(
            FNode::make_and({FNode::leaf(pos(vars.suffix_var(sid, 0, i))),
                             FNode::leaf(pos(fa(i)))}));
      f.add_assert(reach, FNode::make_or(std::move(terms)));
      for (State i = 0; i < k; ++i)
        f.add_clause(avoid, {neg(vars.suffix_var(sid, 0, i)), neg(fr(i))});
    } else {
      int pid = vars.prefix_id(slice(*cw.w, 0, cw.cut));
      int sid = vars.suffix_id(slice(*cw.w, cw.cut, cw.w->size()));
      std::vector<FNode> terms;
      for (State j = 0; j < k; ++j)
        for (State i = 0; i < k; ++i)
          terms.push_back(
              FNode::make_and({FNode::leaf(pos(vars.prefix_var(pid, j))),
                               FNode::leaf(pos(vars.suffix_var(sid, j, i))),
                               FNode::leaf(pos(fa(i)))}));
      f.add_assert(reach, FNode::make_or(std::move(terms)));
      for (State j = 0; j < k; ++j)
        for (State i = 0; i < k; ++i)
          f.add_clause(avoid, {neg(vars.prefix_var(pid, j)),
                               neg(vars.suffix_var(sid, j, i)), neg(fr(i))});
    }
  }

  f.num_vars = vars.count();
  return {std::move(f), std::move(vars)};
}

EncodeResult encode_core_k2(const Sample& sample, const Splitting& splitting,
                            int k) {
  check_inputs(sample, k);
  auto words = cut_words(sample, splitting);
  const int layout = k + 2;
  const State A = k, R = k + 1;  // dedicated accepting / rejecting finals
  VarMap vars(k, layout, sample.alphabet.size(), /*with_possible_finals=*/true);

  // Prefix paths over the closure of *whole* words: the reduction
  // constraints need the terminal states of every full word regardless of
  // its cut.  Full words whose suffix part is empty additionally need the
  // two finals as prefix targets.
  std::set<int> wants_final_targets;
  for (const CutWord& cw : words) {
    int pid = -1;
    for (std::size_t t = 1; t <= cw.w->size(); ++t)
      pid = vars.add_prefix(slice(*cw.w, 0, t));
    if (cw.cut == cw.w->size()) wants_final_targets.insert(pid);
    for (std::size_t t = cw.cut; t < cw.w->size(); ++t)
      vars.add_suffix(slice(*cw.w, t, cw.w->size()));
  }
  for (int pid : sorted_ids(vars.prefixes())) {
    for (State i = 0; i < k; ++i) vars.ensure_prefix_var(pid, i);
    if (wants_final_targets.count(pid)) {
      vars.ensure_prefix_var(pid, A);
      vars.ensure_prefix_var(pid, R);
    }
  }
  for (int sid : sorted_ids(vars.suffixes()))
    for (State i = 0; i < k; ++i) {
      vars.ensure_suffix_var(sid, i, A);
      vars.ensure_suffix_var(sid, i, R);
    }

  Formula f;

  auto prefix_targets = [&](int pid) {
    std::vector<State> ts;
    for (State i = 0; i < k; ++i) ts.push_back(i);
    if (vars.prefix_var(pid, A) != 0) {
      ts.push_back(A);
      ts.push_back(R);
    }
    return ts;
  };

  for (int pid : sorted_ids(vars.prefixes())) {
    const Word& p = vars.prefixes()[static_cast<std::size_t>(pid)];
    if (p.size() == 1) {
      for (State i : prefix_targets(pid))
        f.add_iff(Family::PrefixBase, vars.prefix_var(pid, i),
                  FNode::leaf(pos(vars.transition(p.syms[0], 0, i))));
    } else {
      int xid = vars.prefix_id(slice(p, 0, p.size() - 1));
      Symbol s = p.syms.back();
      for (State i : prefix_targets(pid)) {
        std::vector<FNode> terms;
        for (State j = 0; j < k; ++j)  // finals are sinks, never mid-path
          terms.push_back(FNode::make_and(
              {FNode::leaf(pos(vars.prefix_var(xid, j))),
               FNode::leaf(pos(vars.transition(s, j, i)))}));
        f.add_iff(Family::PrefixStep, vars.prefix_var(pid, i),
                  FNode::make_or(std::move(terms)));
      }
    }
  }

  // Suffix paths target only the two finals.
  for (int sid : sorted_ids(vars.suffixes())) {
    const Word& v = vars.suffixes()[static_cast<std::size_t>(sid)];
    if (v.size() == 1) {
      for (State i = 0; i < k; ++i)
        for (State t : {A, R})
          f.add_iff(Family::SuffixBase, vars.suffix_var(sid, i, t),
                    FNode::leaf(pos(vars.transition(v.syms[0], i, t))));
    } else {
      int xid = vars.suffix_id(slice(v, 1, v.size()));
      Symbol s = v.syms[0];
      for (State i = 0; i < k; ++i)
        for (State t : {A, R}) {
          std::vector<FNode> terms;
          for (State l = 0; l < k; ++l)
            terms.push_back(FNode::make_and(
                {FNode::leaf(pos(vars.transition(s, i, l))),
                 FNode::leaf(pos(vars.suffix_var(xid, l, t)))}));
          f.add_iff(Family::SuffixStep, vars.suffix_var(sid, i, t),
                    FNode::make_or(std::move(terms)));
        }
    }
  }

  // Word constraints: reach your own final, never the other one.
  for (const CutWord& cw : words) {
    State own = cw.positive ? A : R;
    State other = cw.positive ? R : A;
    Family reach = cw.positive ? Family::PosAccept : Family::NegReject;
    Family avoid = cw.positive ? Family::PosNoReject : Family::NegNoAccept;
    if (cw.cut == cw.w->size()) {
      int pid = vars.prefix_id(*cw.w);
      f.add_clause(reach, {pos(vars.prefix_var(pid, own))});
      f.add_clause(avoid, {neg(vars.prefix_var(pid, other))});
    } else if (cw.cut == 0) {
      int sid = vars.suffix_id(*cw.w);
      f.add_clause(reach, {pos(vars.suffix_var(sid, 0, own))});
      f.add_clause(avoid, {neg(vars.suffix_var(sid, 0, other))});
    } else {
      int pid = vars.prefix_id(slice(*cw.w, 0, cw.cut));
      int sid = vars.suffix_id(slice(*cw.w, cw.cut, cw.w->size()));
      std::vector<FNode> terms;
      for (State j = 0; j < k; ++j)
        terms.push_back(
            FNode::make_and({FNode::leaf(pos(vars.prefix_var(pid, j))),
                             FNode::leaf(pos(vars.suffix_var(sid, j, own)))}));
      f.add_assert(reach, FNode::make_or(std::move(terms)));
      for (State j = 0; j < k; ++j)
        f.add_clause(avoid, {neg(vars.prefix_var(pid, j)),
                             neg(vars.suffix_var(sid, j, other))});
    }
  }

  // The two finals are sinks.
  for (Symbol s = 0; s < sample.alphabet.size(); ++s)
    for (State i : {A, R})
      for (State j = 0; j < layout; ++j)
        f.add_clause(Family::FinalSink, {neg(vars.transition(s, i, j))});

  // Every arc into a final duplicates an arc into some core state.
  for (Symbol s = 0; s < sample.alphabet.size(); ++s)
    for (State i = 0; i < k; ++i) {
      std::vector<Lit> dup_a{neg(vars.transition(s, i, A))};
      std::vector<Lit> dup_r{neg(vars.transition(s, i, R))};
      for (State j = 0; j < k; ++j) {
        dup_a.push_back(pos(vars.transition(s, i, j)));
        dup_r.push_back(pos(vars.transition(s, i, j)));
      }
      f.add_clause(Family::DuplicateIntoAccept, std::move(dup_a));
      f.add_clause(Family::DuplicateIntoReject, std::move(dup_r));
    }

  // Possible finals: clean of the opposite polarity...
  for (State i = 0; i < k; ++i) {
    for (const CutWord& cw : words) {
      int pid = vars.prefix_id(*cw.w);
      if (cw.positive)
        f.add_clause(Family::PossibleRejectClean,
                     {neg(vars.possible_reject(i)), neg(vars.prefix_var(pid, i))});
      else
        f.add_clause(Family::PossibleAcceptClean,
                     {neg(vars.possible_accept(i)), neg(vars.prefix_var(pid, i))});
    }
  }

  // ...and witnessed by a word of their own polarity whose last arc was
  // duplicated into the matching final.
  for (State i = 0; i < k; ++i) {
    for (bool positive : {true, false}) {
      State fin = positive ? A : R;
      int star = positive ? vars.possible_accept(i) : vars.possible_reject(i);
      std::vector<FNode> terms{FNode::leaf(neg(star))};
      for (const CutWord& cw : words) {
        if (cw.positive != positive) continue;
        Symbol s = cw.w->syms.back();
        if (cw.w->size() == 1) {
          terms.push_back(FNode::make_and(
              {FNode::leaf(pos(vars.transition(s, 0, i))),
               FNode::leaf(pos(vars.transition(s, 0, fin)))}));
        } else {
          int xid = vars.prefix_id(slice(*cw.w, 0, cw.w->size() - 1));
          for (State j = 0; j < k; ++j)
            terms.push_back(FNode::make_and(
                {FNode::leaf(pos(vars.prefix_var(xid, j))),
                 FNode::leaf(pos(vars.transition(s, j, i))),
                 FNode::leaf(pos(vars.transition(s, j, fin)))}));
        }
      }
      f.add_assert(positive ? Family::PossibleAcceptWitness
                            : Family::PossibleRejectWitness,
                   FNode::make_or(std::move(terms)));
    }
  }

  // Each word terminates in at least one possible final of its polarity,
  // which is what makes the reduced automaton consistent.
  for (const CutWord& cw : words) {
    int pid = vars.prefix_id(*cw.w);
    std::vector<FNode> terms;
    for (State i = 0; i < k; ++i)
      terms.push_back(FNode::make_and(
          {FNode::leaf(pos(vars.prefix_var(pid, i))),
           FNode::leaf(pos(cw.positive ? vars.possible_accept(i)
                                       : vars.possible_reject(i)))}));
    f.add_assert(cw.positive ? Family::PosReachesPossible
                             : Family::NegReachesPossible,
                 FNode::make_or(std::move(terms)));
  }

  for (State i = 0; i < k; ++i)
    f.add_clause(Family::PossibleFinalExclusion,
                 {neg(vars.possible_accept(i)), neg(vars.possible_reject(i))});

  f.num_vars = vars.count();
  return {std::move(f), std::move(vars)};
}

namespace {

bool model_true(const std::vector<std::uint8_t>& model, int var) {
  return model.at(static_cast<std::size_t>(var)) != 0;
}

}  // namespace

Nfa3 decode_nfa(const VarMap& vars, const Alphabet& alphabet,
                const std::vector<std::uint8_t>& model) {
  const int k = vars.k();
  Nfa3 nfa(k, alphabet);
  for (State i = 0; i < k; ++i) {
    bool acc = model_true(model, vars.final_accept(i));
    bool rej = model_true(model, vars.final_reject(i));
    if (acc && rej)
      throw InconsistentModel("state marked accepting and rejecting");
    if (acc) nfa.set_accepting(i);
    if (rej) nfa.set_rejecting(i);
  }
  for (Symbol s = 0; s < vars.num_syms(); ++s)
    for (State i = 0; i < k; ++i)
      for (State j = 0; j < k; ++j)
        if (model_true(model, vars.transition(s, i, j)))
          nfa.add_transition(i, s, j);
  return nfa;
}

DecodedK2 decode_nfa_k2(const VarMap& vars, const Alphabet& alphabet,
                        const std::vector<std::uint8_t>& model) {
  const int k = vars.k();
  const int layout = vars.layout();
  const State A = k, R = k + 1;
  DecodedK2 out;
  out.nfa = Nfa3(layout, alphabet);
  out.nfa.set_accepting(A);
  out.nfa.set_rejecting(R);
  for (Symbol s = 0; s < vars.num_syms(); ++s)
    for (State i = 0; i < layout; ++i)
      for (State j = 0; j < layout; ++j)
        if (model_true(model, vars.transition(s, i, j))) {
          if (i >= k)
            throw InconsistentModel("dedicated final state has outgoing arc");
          out.nfa.add_transition(i, s, j);
        }
  for (Symbol s = 0; s < vars.num_syms(); ++s)
    for (State i = 0; i < k; ++i)
      for (State fin : {A, R}) {
        if (!out.nfa.has_transition(i, s, fin)) continue;
        bool dup = false;
        for (State j = 0; j < k && !dup; ++j)
          dup = out.nfa.has_transition(i, s, j);
        if (!dup)
          throw InconsistentModel("arc into final lacks its core duplicate");
      }
  for (State i = 0; i < k; ++i) {
    bool acc = model_true(model, vars.possible_accept(i));
    bool rej = model_true(model, vars.possible_reject(i));
    if (acc && rej)
      throw InconsistentModel("state possible-accepting and possible-rejecting");
    if (acc) out.astar.push_back(i);
    if (rej) out.rstar.push_back(i);
  }
  return out;
}

Nfa3 reduce_k2_to_k(const Nfa3& k2, const std::vector<State>& astar,
                    const std::vector<State>& rstar) {
  const int k = k2.num_states() - 2;
  if (k < 1) throw Error("automaton too small to reduce");
  Nfa3 out(k, k2.alphabet());
  for (State i : astar) out.set_accepting(i);
  for (State i : rstar) out.set_rejecting(i);
  for (const Transition& t : k2.transitions())
    if (t.from < k && t.to < k) out.add_transition(t.from, t.sym, t.to);
  return out;
}

}  // namespace nfa3
