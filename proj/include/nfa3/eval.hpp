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

#ifndef NFA3_EVAL_HPP_
#define NFA3_EVAL_HPP_

#include "nfa3/classifier.hpp"
#include "nfa3/corpus.hpp"
#include "nfa3/inference.hpp"

namespace nfa3 {

struct ConfusionCounts {
  std::uint64_t tp = 0, tn = 0, fp = 0, fn = 0;
  std::uint64_t total() const { return tp + tn + fp + fn; }
};

/// (TP + TN) / (TP + TN + FP + FN); EmptyTestSet when the total is zero.
double accuracy(const ConfusionCounts& c);

/// 2 TP / (2 TP + FP + FN); defined as 0 when the denominator is zero.
double f1_score(const ConfusionCounts& c);

/// labels[i] is true for a positive test word.
ConfusionCounts confusion(const std::vector<Decision>& decisions,
                          const std::vector<bool>& labels);

/// One train fraction; the label keeps the plan's literal spelling so it can
/// be echoed into reports without float-formatting noise.
struct SplitSpec {
  std::string label;
  double fraction = 0.5;
};

/// A full experiment: one corpus (from disk or generated), a grid of
/// (split, model) inference cells, and for each cell the weight-mask x
/// classifier evaluation grid.
struct ExperimentPlan {
  std::string corpus_path;        ///< exclusive with generator.pattern
  RegexpBenchmarkSpec generator;  ///< active when generator.pattern nonempty
  std::string dataset;            ///< row label; defaults from the source
  std::vector<SplitSpec> splits = {{"0.5", 0.5}};
  std::vector<ModelSpec> models = {{SplitKind::Prefix, false}};
  std::vector<ClassifierKind> classifiers = {
      ClassifierKind::MultMax, ClassifierKind::MultAvg, ClassifierKind::SumMax,
      ClassifierKind::SumAvg};
  std::vector<unsigned> weight_masks;  ///< default all 256
  int k = 0;                           ///< fixed state count; 0 = search
  int k_max = 8;
  double timeout_seconds = 900;
  std::uint64_t path_budget = kDefaultPathBudget;
  std::uint64_t seed = 1;
  TieRule tie = TieRule::Negative;
  int threads = 0;  ///< workers for the weight grid; 0 = hardware count
  int ils_iterations = 500;
  std::string backend;  ///< "" / "embedded" or an external solver command
};

/// Parses the flat `key = value` plan format ('#' starts a comment line).
/// Keys: corpus, pattern, total, min_len, max_len, gen_seed, dataset,
/// splits, models, classifiers, weights, k, k_max, timeout_seconds,
/// path_budget, seed, tie, threads, ils_iterations, backend.
ExperimentPlan parse_plan(const std::string& text);

struct GridRow {
  std::string dataset, split, model, classifier;
  unsigned weights = 0;
  double acc = 0, f1 = 0;
  ConfusionCounts counts;
};

/// Best accuracy within one group with the paper-style companion columns:
/// the F1 reached in the best-accuracy cells, the overall best F1, and a
/// star when the latter lives in a different cell.
struct BestRow {
  std::string section;  ///< "by-dataset" or "by-classifier"
  std::string group;    ///< dataset name resp. classifier token
  std::string split, model;
  double best_acc = 0;
  double f1_at_best = 0;
  double best_f1 = 0;
  bool starred = false;
};

struct FailedCell {
  std::string split, model, status;  ///< status "infeasible" or "timeout"
};

struct ExperimentReport {
  std::vector<GridRow> grid;
  std::vector<BestRow> bests;
  std::vector<FailedCell> failures;
  std::vector<AttemptStats> attempts;
};

/// Runs the whole plan.  Inference per (split, model) is sequential; the
/// weight-mask grid fans out over plan.threads workers with slot-addressed
/// results, so the report is identical whatever the scheduling.
ExperimentReport run_experiment(const ExperimentPlan& plan);

std::string grid_csv(const ExperimentReport& report);
std::string summary_csv(const ExperimentReport& report);
std::string failures_csv(const ExperimentReport& report);

/// Writes grid.csv, summary.csv, failures.csv, attempts.jsonl into out_dir
/// (created if missing).
void write_report(const ExperimentReport& report, const std::string& out_dir);

}  // namespace nfa3

#endif  // NFA3_EVAL_HPP_
