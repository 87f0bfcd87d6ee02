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

#ifndef NFA3_CLASSIFIER_HPP_
#define NFA3_CLASSIFIER_HPP_

#include "nfa3/freq_prob.hpp"

namespace nfa3 {

/// Per-run score, aggregated over all runs of the word:
///  - MultMax / MultAvg: product of transition probabilities times the
///    terminal state's final probability; max resp. mean over runs.
///  - SumMax / SumAvg: sum of those probabilities divided by |w|+1; max
///    resp. mean over runs.
enum class ClassifierKind { MultMax, MultAvg, SumMax, SumAvg };

std::string classifier_token(ClassifierKind kind);      // "mm" "ma" "sm" "sa"
ClassifierKind parse_classifier_token(const std::string& token);

struct ScorePair {
  double positive = 0;
  double negative = 0;
  std::uint64_t path_count = 0;
};

struct AllScores {
  ScorePair mm, ma, sm, sa;
};

/// Scores for all four classifiers from one traversal of the word's runs.
/// A word with no runs (including symbols the automaton has never seen)
/// scores (0, 0).
AllScores score_all(const ProbabilisticNfa& pnfa, const Word& w,
                    std::uint64_t budget = kDefaultPathBudget);
AllScores score_all(const ProbabilisticNfa& pnfa, const std::string& word,
                    std::uint64_t budget = kDefaultPathBudget);

ScorePair score(const ProbabilisticNfa& pnfa, const Word& w,
                ClassifierKind kind, std::uint64_t budget = kDefaultPathBudget);

enum class TieRule { Negative, Positive };
enum class Decision { Positive, Negative };

/// The greater score wins; exact ties fall to the tie rule.
Decision decide(const ScorePair& scores, TieRule tie = TieRule::Negative);

const ScorePair& pick(const AllScores& scores, ClassifierKind kind);

}  // namespace nfa3

#endif  // NFA3_CLASSIFIER_HPP_
