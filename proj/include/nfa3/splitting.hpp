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

#ifndef NFA3_SPLITTING_HPP_
#define NFA3_SPLITTING_HPP_

#include <cstdint>
#include <vector>

#include "nfa3/automaton.hpp"

namespace nfa3 {

/// Assignment of one cut point per sample word: word w becomes (u, v) with
/// u = w[0..cut) fed to prefix constraints and v = w[cut..) to suffix
/// constraints.  Indexed parallel to Sample::positives / ::negatives.
struct Splitting {
  std::vector<std::size_t> pos_cut;
  std::vector<std::size_t> neg_cut;

  std::size_t cut(bool positive, std::size_t idx) const {
    return positive ? pos_cut.at(idx) : neg_cut.at(idx);
  }
};

Splitting split_all_prefix(const Sample& sample);   ///< every word is (w, lambda)
Splitting split_all_suffix(const Sample& sample);   ///< every word is (lambda, w)

/// Greedy cover by most valuable suffixes: candidate v scores |v| * (number
/// of sample words with suffix v); ties prefer longer, then lexicographically
/// smaller.  Each word is cut at the first selected suffix covering it.
Splitting split_best_suffix(const Sample& sample);

/// Mirror image of split_best_suffix for prefixes.
Splitting split_best_prefix(const Sample& sample);

/// Cost driving the ILS: |Pref(S_p)| + k * |Suf(S_s)|, where S_p / S_s are
/// the sets of nonempty prefix/suffix parts and Pref/Suf close them under
/// nonempty prefixes/suffixes.  This counts the path variables the SAT
/// encoding will pay for (suffix variables cost a factor k more).
std::uint64_t splitting_fitness(const Sample& sample, const Splitting& s,
                                int k);

enum class IlsStart { Random, BestPrefix, BestSuffix };

struct IlsConfig {
  IlsStart start = IlsStart::Random;
  int max_iterations = 500;       ///< perturbation rounds
  std::uint64_t seed = 0;
};

/// Iterated local search over cut points: first-improvement descent moving
/// single cuts by +-1, perturbation re-cutting ceil(|S|/10) random words,
/// restarts from the incumbent, equal-or-better acceptance.  The result is
/// never worse than the start solution.
Splitting ils_optimize(const Sample& sample, int k, const IlsConfig& config);

}  // namespace nfa3

#endif  // NFA3_SPLITTING_HPP_
