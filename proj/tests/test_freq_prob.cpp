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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "nfa3/freq_prob.hpp"
#include "test_support.hpp"

using namespace nfa3;
using namespace nfa3::testing;

namespace {

/// Reference frequency counter built on the plain recursive path
/// enumerator: no sharing, no pruning, straight from the definitions.
FrequencyTables naive_frequencies(const Nfa3& nfa, const Sample& sample) {
  FrequencyTables t;
  const std::size_t ns = static_cast<std::size_t>(nfa.num_states());
  const std::size_t nt = nfa.transitions().size();
  for (auto* v : {&t.f_pos_hit, &t.f_pos_unk, &t.f_neg_hit, &t.f_neg_unk})
    v->assign(ns, 0);
  for (auto* v : {&t.d_pos_hit, &t.d_pos_unk, &t.d_neg_hit, &t.d_neg_unk})
    v->assign(nt, 0);

  auto feed = [&](const Word& w, bool positive) {
    for (const PhysicalPath& path : naive_paths(nfa, w)) {
      State end = path_end(path);
      const bool hit = positive ? nfa.is_accepting(end) : nfa.is_rejecting(end);
      const bool opposite =
          positive ? nfa.is_rejecting(end) : nfa.is_accepting(end);
      if (opposite) continue;  // runs into the wrong sort count nowhere
      auto& f = positive ? (hit ? t.f_pos_hit : t.f_pos_unk)
                         : (hit ? t.f_neg_hit : t.f_neg_unk);
      auto& d = positive ? (hit ? t.d_pos_hit : t.d_pos_unk)
                         : (hit ? t.d_neg_hit : t.d_neg_unk);
      f[static_cast<std::size_t>(end)] += 1;
      for (const Transition& arc : path)
        d[static_cast<std::size_t>(
            *nfa.transition_index(arc.from, arc.sym, arc.to))] += 1;
    }
  };
  for (const Word& w : sample.positives) feed(w, true);
  for (const Word& w : sample.negatives) feed(w, false);
  return t;
}

}  // namespace

TEST_CASE("frequency tables on the two-run example") {
  // q1 --a--> {q1, q2}, q2 accepting, sample word aa (positive).  Runs:
  // q1q1q1 ends neutral, q1q1q2 ends accepting, q1q2- dies.
  Nfa3 nfa(2, Alphabet("a"));
  nfa.set_accepting(1);
  nfa.add_transition(0, 0, 0);
  nfa.add_transition(0, 0, 1);
  Sample s;
  s.alphabet = nfa.alphabet();
  s.positives.push_back(intern("aa", s.alphabet));

  FrequencyTables t = compute_frequencies(nfa, s);
  CHECK(t.f_pos_hit == std::vector<std::uint64_t>{0, 1});
  CHECK(t.f_pos_unk == std::vector<std::uint64_t>{1, 0});
  CHECK(t.f_neg_hit == std::vector<std::uint64_t>{0, 0});
  CHECK(t.f_neg_unk == std::vector<std::uint64_t>{0, 0});

  const int loop = *nfa.transition_index(0, 0, 0);
  const int step = *nfa.transition_index(0, 0, 1);
  // The accepting run crosses the loop once then steps over; the neutral
  // run crosses the loop twice.
  CHECK(t.d_pos_hit[static_cast<std::size_t>(loop)] == 1);
  CHECK(t.d_pos_hit[static_cast<std::size_t>(step)] == 1);
  CHECK(t.d_pos_unk[static_cast<std::size_t>(loop)] == 2);
  CHECK(t.d_pos_unk[static_cast<std::size_t>(step)] == 0);
}

TEST_CASE("runs ending in the opposite sort are discarded") {
  // Same machine but q2 rejecting: the positive word's q1q1q2 run now ends
  // in the wrong sort and contributes nothing anywhere.
  Nfa3 nfa(2, Alphabet("a"));
  nfa.set_rejecting(1);
  nfa.add_transition(0, 0, 0);
  nfa.add_transition(0, 0, 1);
  Sample s;
  s.alphabet = nfa.alphabet();
  s.positives.push_back(intern("aa", s.alphabet));

  FrequencyTables t = compute_frequencies(nfa, s);
  CHECK(t.f_pos_hit == std::vector<std::uint64_t>{0, 0});
  CHECK(t.f_pos_unk == std::vector<std::uint64_t>{1, 0});
  const int loop = *nfa.transition_index(0, 0, 0);
  const int step = *nfa.transition_index(0, 0, 1);
  CHECK(t.d_pos_unk[static_cast<std::size_t>(loop)] == 2);
  CHECK(t.d_pos_hit[static_cast<std::size_t>(step)] == 0);
}

TEST_CASE("frequencies match the naive recursive counter") {
  Rng rng(321);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + static_cast<int>(rng.below(3));
    Nfa3 nfa = random_nfa(rng, k, Alphabet("ab"), 55);
    Sample s = random_sample(rng, 2, 5, 5);
    s.alphabet = nfa.alphabet();

    FrequencyTables fast = compute_frequencies(nfa, s);
    FrequencyTables slow = naive_frequencies(nfa, s);
    CHECK(fast.f_pos_hit == slow.f_pos_hit);
    CHECK(fast.f_pos_unk == slow.f_pos_unk);
    CHECK(fast.f_neg_hit == slow.f_neg_hit);
    CHECK(fast.f_neg_unk == slow.f_neg_unk);
    CHECK(fast.d_pos_hit == slow.d_pos_hit);
    CHECK(fast.d_pos_unk == slow.d_pos_unk);
    CHECK(fast.d_neg_hit == slow.d_neg_hit);
    CHECK(fast.d_neg_unk == slow.d_neg_unk);
  }
}

TEST_CASE("counting respects the per-word path budget") {
  // Complete graph on 3 states over one symbol: 3^12 runs for a length-12
  // word.
  Nfa3 nfa(3, Alphabet("a"));
  for (State i = 0; i < 3; ++i)
    for (State j = 0; j < 3; ++j) nfa.add_transition(i, 0, j);
  Sample s;
  s.alphabet = nfa.alphabet();
  s.positives.push_back(intern(std::string(12, 'a'), s.alphabet));
  CHECK_THROWS_AS(compute_frequencies(nfa, s, 1000), PathBudgetExceeded);
  CHECK_NOTHROW(compute_frequencies(nfa, s, 600000));
}

TEST_CASE("mask bits map to the eight weights in declaration order") {
  WeightConfig all = WeightConfig::from_mask(0xFF);
  CHECK(all.f_pos_hit == 1);
  CHECK(all.d_neg_unk == 1);

  WeightConfig none = WeightConfig::from_mask(0);
  CHECK(none.f_pos_hit == 0);
  CHECK(none.f_pos_unk == 0);
  CHECK(none.f_neg_hit == 0);
  CHECK(none.f_neg_unk == 0);
  CHECK(none.d_pos_hit == 0);
  CHECK(none.d_pos_unk == 0);
  CHECK(none.d_neg_hit == 0);
  CHECK(none.d_neg_unk == 0);

  CHECK(WeightConfig::from_mask(1u << 0).f_pos_hit == 1);
  CHECK(WeightConfig::from_mask(1u << 0).f_pos_unk == 0);
  CHECK(WeightConfig::from_mask(1u << 1).f_pos_unk == 1);
  CHECK(WeightConfig::from_mask(1u << 2).f_neg_hit == 1);
  CHECK(WeightConfig::from_mask(1u << 3).f_neg_unk == 1);
  CHECK(WeightConfig::from_mask(1u << 4).d_pos_hit == 1);
  CHECK(WeightConfig::from_mask(1u << 5).d_pos_unk == 1);
  CHECK(WeightConfig::from_mask(1u << 6).d_neg_hit == 1);
  CHECK(WeightConfig::from_mask(1u << 7).d_neg_unk == 1);
}

TEST_CASE("state mass follows the state's own sort") {
  // q2 accepting: its positive mass is the hit count; its negative mass is
  // zero no matter the weights.  Neutral q1 carries unk mass on both sides.
  Nfa3 nfa(2, Alphabet("a"));
  nfa.set_accepting(1);
  nfa.add_transition(0, 0, 0);
  nfa.add_transition(0, 0, 1);
  Sample s;
  s.alphabet = nfa.alphabet();
  s.positives.push_back(intern("aa", s.alphabet));
  s.negatives.push_back(intern("a", s.alphabet));

  FrequencyTables t = compute_frequencies(nfa, s);
  WeightConfig w;  // all ones
  WeightedNfa wffa = build_wffa(nfa, t, w);
  CHECK(wffa.f_pos[1] == 1);  // hit count 1 at weight 1
  CHECK(wffa.f_neg[1] == 0);  // accepting states carry no negative mass
  // Negative word a has runs ending q1 (neutral, unk) and q2 (opposite,
  // dropped): q1's negative mass is that single unk ending.
  CHECK(wffa.f_neg[0] == 1);

  // Zeroing the hit weight erases exactly the hit contribution.
  WeightConfig wz = WeightConfig::from_mask(0xFF & ~(1u << 0));
  CHECK(build_wffa(nfa, t, wz).f_pos[1] == 0);
}

TEST_CASE("transition mass is the weighted sum of hit and unk counts") {
  Nfa3 nfa(2, Alphabet("a"));
  nfa.set_accepting(1);
  nfa.add_transition(0, 0, 0);
  nfa.add_transition(0, 0, 1);
  Sample s;
  s.alphabet = nfa.alphabet();
  s.positives.push_back(intern("aa", s.alphabet));

  FrequencyTables t = compute_frequencies(nfa, s);
  const auto loop = static_cast<std::size_t>(*nfa.transition_index(0, 0, 0));
  WeightConfig w;
  w.d_pos_hit = 10;
  w.d_pos_unk = 0.5;
  // Loop counts: hit 1, unk 2 -> 10*1 + 0.5*2 = 11.
  CHECK(build_wffa(nfa, t, w).d_pos[loop] == 11);
}

TEST_CASE("normalization splits mass 0.25 / 0.75") {
  // One state with final mass 1 and a self-loop of mass 3.
  Nfa3 nfa(1, Alphabet("a"));
  nfa.set_accepting(0);
  nfa.add_transition(0, 0, 0);
  WeightedNfa wffa;
  wffa.f_pos = {1};
  wffa.f_neg = {0};
  wffa.d_pos = {3};
  wffa.d_neg = {0};
  ProbabilisticNfa p = to_probabilistic(nfa, wffa);
  CHECK(p.gf_pos[0] == doctest::Approx(0.25));
  CHECK(p.gd_pos[0] == doctest::Approx(0.75));
  // The negative side carries no mass and stays all-zero.
  CHECK(p.gf_neg[0] == 0);
  CHECK(p.gd_neg[0] == 0);
}

TEST_CASE("each state's outgoing probability mass sums to one or zero") {
  Rng rng(322);
  for (int trial = 0; trial < 150; ++trial) {
    const int k = 1 + static_cast<int>(rng.below(3));
    Nfa3 nfa = random_nfa(rng, k, Alphabet("ab"), 50);
    Sample s = random_sample(rng, 2, 5, 5);
    s.alphabet = nfa.alphabet();
    FrequencyTables t = compute_frequencies(nfa, s);
    WeightConfig w = WeightConfig::from_mask(
        static_cast<unsigned>(rng.below(256)));
    ProbabilisticNfa p = to_probabilistic(nfa, build_wffa(nfa, t, w));
    for (State q = 0; q < p.num_states(); ++q) {
      double sum_pos = p.gf_pos[static_cast<std::size_t>(q)];
      double sum_neg = p.gf_neg[static_cast<std::size_t>(q)];
      for (int arc : p.arcs_out(q)) {
        sum_pos += p.gd_pos[static_cast<std::size_t>(arc)];
        sum_neg += p.gd_neg[static_cast<std::size_t>(arc)];
        CHECK(p.gd_pos[static_cast<std::size_t>(arc)] >= 0);
        CHECK(p.gd_neg[static_cast<std::size_t>(arc)] >= 0);
      }
      CHECK((std::fabs(sum_pos - 1) < 1e-9 || sum_pos == 0));
      CHECK((std::fabs(sum_neg - 1) < 1e-9 || sum_neg == 0));
    }
  }
}

TEST_CASE("arc lookup tables agree with the transition list") {
  Rng rng(323);
  Nfa3 nfa = random_nfa(rng, 3, Alphabet("ab"), 60);
  ProbabilisticNfa p(nfa.num_states(), nfa.alphabet(), nfa.transitions());
  std::size_t seen = 0;
  for (State q = 0; q < p.num_states(); ++q) {
    for (Symbol sym = 0; sym < 2; ++sym) {
      for (int t : p.arcs(q, sym)) {
        const Transition& arc = p.transitions()[static_cast<std::size_t>(t)];
        CHECK(arc.from == q);
        CHECK(arc.sym == sym);
        ++seen;
      }
    }
    for (int t : p.arcs_out(q))
      CHECK(p.transitions()[static_cast<std::size_t>(t)].from == q);
  }
  CHECK(seen == p.transitions().size());
}

TEST_CASE("probabilistic automata round-trip through text exactly") {
  Rng rng(324);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 1 + static_cast<int>(rng.below(3));
    Nfa3 nfa = random_nfa(rng, k, Alphabet("ab"), 60);
    Sample s = random_sample(rng, 2, 4, 4);
    s.alphabet = nfa.alphabet();
    WeightConfig w;
    w.f_pos_hit = 0.3;  // exercise non-representable decimals
    w.d_neg_unk = 0.7;
    ProbabilisticNfa p =
        to_probabilistic(nfa, build_wffa(nfa, compute_frequencies(nfa, s), w));
    const std::string text = write_pnfa(p);
    ProbabilisticNfa q = read_pnfa(text);
    CHECK(q.num_states() == p.num_states());
    CHECK(q.transitions() == p.transitions());
    CHECK(q.gf_pos == p.gf_pos);  // bit-exact through %.17g
    CHECK(q.gf_neg == p.gf_neg);
    CHECK(q.gd_pos == p.gd_pos);
    CHECK(q.gd_neg == p.gd_neg);
    CHECK(write_pnfa(q) == text);
  }
}

TEST_CASE("malformed probabilistic automaton text is rejected") {
  Nfa3 nfa(1, Alphabet("a"));
  nfa.set_accepting(0);
  nfa.add_transition(0, 0, 0);
  WeightedNfa wffa;
  wffa.f_pos = {1};
  wffa.f_neg = {0};
  wffa.d_pos = {1};
  wffa.d_neg = {0};
  std::string good = write_pnfa(to_probabilistic(nfa, wffa));
  CHECK_NOTHROW(read_pnfa(good));
  CHECK_THROWS_AS(read_pnfa(""), FormatError);
  CHECK_THROWS_AS(read_pnfa("k x alphabet a\n"), FormatError);
  CHECK_THROWS_AS(read_pnfa(good + "bogus line\n"), FormatError);
}
