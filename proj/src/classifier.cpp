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

#include "nfa3/classifier.hpp"

#include <algorithm>
#include <string>

namespace nfa3 {

std::string classifier_token(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::MultMax: return "mm";
    case ClassifierKind::MultAvg: return "ma";
    case ClassifierKind::SumMax: return "sm";
    case ClassifierKind::SumAvg: return "sa";
  }
  throw Error("unknown classifier kind");
}

ClassifierKind parse_classifier_token(const std::string& token) {
  if (token == "mm") return ClassifierKind::MultMax;
  if (token == "ma") return ClassifierKind::MultAvg;
  if (token == "sm") return ClassifierKind::SumMax;
  if (token == "sa") return ClassifierKind::SumAvg;
  throw FormatError("unknown classifier '" + token +
                    "' (expected mm, ma, sm or sa)");
}

namespace {

// One DFS over the word's runs feeds all four classifiers at once.  Running
// products/sums are carried down the stack; per-run values materialize at the
// leaves.  The alive table prunes branches that cannot finish the word, so
// every visited node lies on a complete run and the work stays proportional
// to the number of runs.
struct RunScorer {
  const ProbabilisticNfa& pnfa;
  const Word& w;
  std::uint64_t budget;
  std::vector<std::vector<char>> alive;

  std::uint64_t runs = 0;
  double mm_pos = 0, mm_neg = 0, sm_pos = 0, sm_neg = 0;  // maxima
  double ma_pos = 0, ma_neg = 0, sa_pos = 0, sa_neg = 0;  // totals

  RunScorer(const ProbabilisticNfa& pnfa, const Word& w, std::uint64_t budget)
      : pnfa(pnfa), w(w), budget(budget) {
    const std::size_t n = w.size();
    alive.assign(n + 1, std::vector<char>(pnfa.num_states(), 0));
    std::fill(alive[n].begin(), alive[n].end(), 1);
    for (std::size_t i = n; i-- > 0;) {
      for (State q = 0; q < pnfa.num_states(); ++q) {
        for (int tid : pnfa.arcs(q, w.syms[i])) {
          if (alive[i + 1][pnfa.transitions()[tid].to]) {
            alive[i][q] = 1;
            break;
          }
        }
      }
    }
  }

  void dfs(State q, std::size_t i, double prod_pos, double prod_neg,
           double sum_pos, double sum_neg) {
    if (i == w.size()) {
      if (runs == budget) {
        throw PathBudgetExceeded("more than " + std::to_string(budget) +
                                 " runs while scoring a word");
      }
      ++runs;
      const double fp = pnfa.gf_pos[q];
      const double fn = pnfa.gf_neg[q];
      const double inv_len = 1.0 / (static_cast<double>(w.size()) + 1.0);
      const double mp = prod_pos * fp;
      const double mn = prod_neg * fn;
      const double sp = (sum_pos + fp) * inv_len;
      const double sn = (sum_neg + fn) * inv_len;
      mm_pos = std::max(mm_pos, mp);
      mm_neg = std::max(mm_neg, mn);
      sm_pos = std::max(sm_pos, sp);
      sm_neg = std::max(sm_neg, sn);
      ma_pos += mp;
      ma_neg += mn;
      sa_pos += sp;
      sa_neg += sn;
      return;
    }
    for (int tid : pnfa.arcs(q, w.syms[i])) {
      const State to = pnfa.transitions()[tid].to;
      if (!alive[i + 1][to]) continue;
      dfs(to, i + 1, prod_pos * pnfa.gd_pos[tid], prod_neg * pnfa.gd_neg[tid],
          sum_pos + pnfa.gd_pos[tid], sum_neg + pnfa.gd_neg[tid]);
    }
  }
};

}  // namespace

AllScores score_all(const ProbabilisticNfa& pnfa, const Word& w,
                    std::uint64_t budget) {
  AllScores out;
  if (pnfa.num_states() == 0) return out;
  for (Symbol s : w.syms) {
    if (s < 0 || s >= pnfa.alphabet().size()) return out;
  }
  RunScorer scorer(pnfa, w, budget);
  if (scorer.alive[0][0]) scorer.dfs(0, 0, 1.0, 1.0, 0.0, 0.0);
  const auto n = scorer.runs;
  out.mm = {scorer.mm_pos, scorer.mm_neg, n};
  out.sm = {scorer.sm_pos, scorer.sm_neg, n};
  if (n > 0) {
    out.ma = {scorer.ma_pos / static_cast<double>(n),
              scorer.ma_neg / static_cast<double>(n), n};
    out.sa = {scorer.sa_pos / static_cast<double>(n),
              scorer.sa_neg / static_cast<double>(n), n};
  } else {
    out.ma.path_count = out.sa.path_count = 0;
  }
  return out;
}

AllScores score_all(const ProbabilisticNfa& pnfa, const std::string& word,
                    std::uint64_t budget) {
  auto w = try_intern(word, pnfa.alphabet());
  if (!w) return AllScores{};  // unknown symbol: no run exists
  return score_all(pnfa, *w, budget);
}

ScorePair score(const ProbabilisticNfa& pnfa, const Word& w,
                ClassifierKind kind, std::uint64_t budget) {
  return pick(score_all(pnfa, w, budget), kind);
}

Decision decide(const ScorePair& scores, TieRule tie) {
  if (scores.positive > scores.negative) return Decision::Positive;
  if (scores.negative > scores.positive) return Decision::Negative;
  return tie == TieRule::Positive ? Decision::Positive : Decision::Negative;
}

const ScorePair& pick(const AllScores& scores, ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::MultMax: return scores.mm;
    case ClassifierKind::MultAvg: return scores.ma;
    case ClassifierKind::SumMax: return scores.sm;
    case ClassifierKind::SumAvg: return scores.sa;
  }
  throw Error("unknown classifier kind");
}

}  // namespace nfa3
