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

#ifndef NFA3_FREQ_PROB_HPP_
#define NFA3_FREQ_PROB_HPP_

#include "nfa3/automaton.hpp"

namespace nfa3 {

/// The eight case weights: per polarity, finishing in a final of that
/// polarity ("hit") vs. finishing in a neutral state ("unk"), separately
/// for states (f) and transitions (d).
struct WeightConfig {
  double f_pos_hit = 1, f_pos_unk = 1;
  double f_neg_hit = 1, f_neg_unk = 1;
  double d_pos_hit = 1, d_pos_unk = 1;
  double d_neg_hit = 1, d_neg_unk = 1;

  /// Bit i of `mask` turns one weight on (1) or off (0), in the order
  /// above: bit 0 = f_pos_hit ... bit 7 = d_neg_unk.
  static WeightConfig from_mask(unsigned mask);
};

/// Raw path counts.  f tables are per state, d tables per transition index
/// (see Nfa3::transitions).  "hit" counts come from runs that end in a
/// final matching the word's polarity, "unk" from runs ending neutral; runs
/// ending in the opposite sort count nowhere.
struct FrequencyTables {
  std::vector<std::uint64_t> f_pos_hit, f_pos_unk, f_neg_hit, f_neg_unk;
  std::vector<std::uint64_t> d_pos_hit, d_pos_unk, d_neg_hit, d_neg_unk;
};

/// Enumerates all runs of every sample word (per-word budget) and counts
/// terminal states and transition occurrences; a transition taken twice by
/// one run counts twice.
FrequencyTables compute_frequencies(const Nfa3& nfa, const Sample& sample,
                                    std::uint64_t budget = kDefaultPathBudget);

/// Weighted-frequency automaton: per-state and per-transition masses for
/// each polarity, obtained by scaling the counts with the case weights.
struct WeightedNfa {
  std::vector<double> f_pos, f_neg;  // per state
  std::vector<double> d_pos, d_neg;  // per transition
};

WeightedNfa build_wffa(const Nfa3& nfa, const FrequencyTables& freq,
                       const WeightConfig& weights);

/// Probabilistic automaton: same transition structure, masses normalized
/// per state and polarity so that final mass plus outgoing transition mass
/// is 1 (or everything 0 where the state carries no mass at all).
class ProbabilisticNfa {
 public:
  ProbabilisticNfa() = default;
  ProbabilisticNfa(int num_states, Alphabet alphabet,
                   std::vector<Transition> transitions);

  int num_states() const { return num_states_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  /// Transition indices leaving `q` on `s`.
  const std::vector<int>& arcs(State q, Symbol s) const;
  /// All transition indices leaving `q`.
  const std::vector<int>& arcs_out(State q) const;

  std::vector<double> gf_pos, gf_neg;  // per state
  std::vector<double> gd_pos, gd_neg;  // per transition

 private:
  int num_states_ = 0;
  Alphabet alphabet_;
  std::vector<Transition> transitions_;
  std::vector<std::vector<std::vector<int>>> by_sym_;
  std::vector<std::vector<int>> by_state_;
};

ProbabilisticNfa to_probabilistic(const Nfa3& nfa, const WeightedNfa& wffa);

/// Text persistence with round-trip-exact float formatting.
std::string write_pnfa(const ProbabilisticNfa& pnfa);
ProbabilisticNfa read_pnfa(const std::string& text);

}  // namespace nfa3

#endif  // NFA3_FREQ_PROB_HPP_
