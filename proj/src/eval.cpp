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

#include "nfa3/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <thread>

namespace nfa3 {

double accuracy(const ConfusionCounts& c) {
  const std::uint64_t total = c.total();
  if (total == 0) throw EmptyTestSet("accuracy of an empty test set");
  return static_cast<double>(c.tp + c.tn) / static_cast<double>(total);
}

double f1_score(const ConfusionCounts& c) {
  const std::uint64_t den = 2 * c.tp + c.fp + c.fn;
  if (den == 0) return 0.0;
  return static_cast<double>(2 * c.tp) / static_cast<double>(den);
}

ConfusionCounts confusion(const std::vector<Decision>& decisions,
                          const std::vector<bool>& labels) {
  if (decisions.size() != labels.size()) {
    throw LengthMismatch("confusion: " + std::to_string(decisions.size()) +
                         " decisions vs " + std::to_string(labels.size()) +
                         " labels");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    const bool said_pos = decisions[i] == Decision::Positive;
    if (labels[i]) {
      (said_pos ? c.tp : c.fn) += 1;
    } else {
      (said_pos ? c.fp : c.tn) += 1;
    }
  }
  return c;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s,
                                    const std::string& what) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    std::string item = trim(s.substr(pos, comma - pos));
    if (item.empty()) throw FormatError("empty item in " + what + " list");
    out.push_back(item);
    pos = comma + 1;
  }
  return out;
}

double parse_real(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size()) {
    throw FormatError("bad " + what + " value '" + text + "'");
  }
  return v;
}

std::string round2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string status_word(InferenceResult::Status s) {
  switch (s) {
    case InferenceResult::Status::Found: return "found";
    case InferenceResult::Status::Infeasible: return "infeasible";
    case InferenceResult::Status::TimedOut: return "timeout";
  }
  return "?";
}

}  // namespace

ExperimentPlan parse_plan(const std::string& text) {
  ExperimentPlan plan;
  bool saw_split = false, saw_model = false, saw_classifier = false,
       saw_weights = false, saw_dataset = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw FormatError("plan line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw FormatError("plan line " + std::to_string(lineno) +
                        ": empty key or value");
    }
    try {
      if (key == "corpus") {
        plan.corpus_path = value;
      } else if (key == "pattern") {
        plan.generator.pattern = value;
      } else if (key == "total") {
        plan.generator.total = static_cast<int>(parse_uint(value, "total"));
      } else if (key == "min_len") {
        plan.generator.min_len = static_cast<int>(parse_uint(value, "min_len"));
      } else if (key == "max_len") {
        plan.generator.max_len = static_cast<int>(parse_uint(value, "max_len"));
      } else if (key == "gen_seed") {
        plan.generator.seed = parse_uint(value, "gen_seed");
      } else if (key == "dataset") {
        plan.dataset = value;
        saw_dataset = true;
      } else if (key == "splits") {
        plan.splits.clear();
        for (const std::string& item : split_list(value, "splits")) {
          const double f = parse_real(item, "split fraction");
          if (!(f > 0.0 && f < 1.0)) {
            throw FormatError("split fraction '" + item +
                              "' outside (0, 1)");
          }
          plan.splits.push_back({item, f});
        }
        saw_split = true;
      } else if (key == "models") {
        plan.models.clear();
        for (const std::string& item : split_list(value, "models")) {
          plan.models.push_back(parse_model_token(item));
        }
        saw_model = true;
      } else if (key == "classifiers") {
        plan.classifiers.clear();
        for (const std::string& item : split_list(value, "classifiers")) {
          plan.classifiers.push_back(parse_classifier_token(item));
        }
        saw_classifier = true;
      } else if (key == "weights") {
        plan.weight_masks.clear();
        if (value == "all") {
          for (unsigned m = 0; m < 256; ++m) plan.weight_masks.push_back(m);
        } else {
          for (const std::string& item : split_list(value, "weights")) {
            const std::uint64_t m = parse_uint(item, "weight mask");
            if (m > 255) {
              throw FormatError("weight mask " + item + " exceeds 255");
            }
            plan.weight_masks.push_back(static_cast<unsigned>(m));
          }
        }
        saw_weights = true;
      } else if (key == "k") {
        plan.k = static_cast<int>(parse_uint(value, "k"));
      } else if (key == "k_max") {
        plan.k_max = static_cast<int>(parse_uint(value, "k_max"));
      } else if (key == "timeout_seconds") {
        plan.timeout_seconds = parse_real(value, "timeout_seconds");
      } else if (key == "path_budget") {
        plan.path_budget = parse_uint(value, "path_budget");
      } else if (key == "seed") {
        plan.seed = parse_uint(value, "seed");
      } else if (key == "tie") {
        if (value == "pos") {
          plan.tie = TieRule::Positive;
        } else if (value == "neg") {
          plan.tie = TieRule::Negative;
        } else {
          throw FormatError("tie must be 'pos' or 'neg', got '" + value + "'");
        }
      } else if (key == "threads") {
        plan.threads = static_cast<int>(parse_uint(value, "threads"));
      } else if (key == "ils_iterations") {
        plan.ils_iterations =
            static_cast<int>(parse_uint(value, "ils_iterations"));
      } else if (key == "backend") {
        plan.backend = value;
      } else {
        throw FormatError("unknown key '" + key + "'");
      }
    } catch (const FormatError& e) {
      throw FormatError("plan line " + std::to_string(lineno) + ": " +
                        e.what());
    }
  }
  if (plan.corpus_path.empty() == plan.generator.pattern.empty()) {
    throw FormatError(
        "plan must set exactly one of 'corpus' and 'pattern'");
  }
  if (!saw_weights) {
    for (unsigned m = 0; m < 256; ++m) plan.weight_masks.push_back(m);
  }
  if (!saw_dataset) {
    if (!plan.corpus_path.empty()) {
      plan.dataset =
          std::filesystem::path(plan.corpus_path).stem().string();
      if (plan.dataset.empty()) plan.dataset = "data";
    } else {
      plan.dataset = "regexp";
    }
  }
  (void)saw_split;
  (void)saw_model;
  (void)saw_classifier;
  return plan;
}

namespace {

// Evaluates the weight-mask grid for one inferred automaton.  Results land
// in slots indexed by (mask position, classifier position), so worker
// scheduling cannot reorder them.
std::vector<GridRow> evaluate_grid(const ExperimentPlan& plan,
                                   const SplitSpec& split,
                                   const std::string& model,
                                   const Nfa3& nfa, const Sample& train,
                                   const std::vector<std::string>& test_words,
                                   const std::vector<bool>& test_labels) {
  const FrequencyTables freq =
      compute_frequencies(nfa, train, plan.path_budget);
  const std::size_t num_masks = plan.weight_masks.size();
  const std::size_t num_cls = plan.classifiers.size();
  std::vector<GridRow> rows(num_masks * num_cls);
  std::vector<std::exception_ptr> errors(num_masks);

  const auto run_mask = [&](std::size_t slot) {
    const unsigned mask = plan.weight_masks[slot];
    const WeightConfig weights = WeightConfig::from_mask(mask);
    const WeightedNfa wffa = build_wffa(nfa, freq, weights);
    const ProbabilisticNfa pnfa = to_probabilistic(nfa, wffa);
    std::vector<AllScores> scores(test_words.size());
    for (std::size_t i = 0; i < test_words.size(); ++i) {
      scores[i] = score_all(pnfa, test_words[i], plan.path_budget);
    }
    for (std::size_t c = 0; c < num_cls; ++c) {
      std::vector<Decision> decisions(test_words.size());
      for (std::size_t i = 0; i < test_words.size(); ++i) {
        decisions[i] =
            decide(pick(scores[i], plan.classifiers[c]), plan.tie);
      }
      const ConfusionCounts counts = confusion(decisions, test_labels);
      GridRow& row = rows[slot * num_cls + c];
      row.dataset = plan.dataset;
      row.split = split.label;
      row.model = model;
      row.classifier = classifier_token(plan.classifiers[c]);
      row.weights = mask;
      row.counts = counts;
      row.acc = accuracy(counts);
      row.f1 = f1_score(counts);
    }
  };

  unsigned workers = plan.threads > 0
                         ? static_cast<unsigned>(plan.threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers,
                               static_cast<unsigned>(num_masks));
  std::atomic<std::size_t> cursor{0};
  const auto drain = [&] {
    for (;;) {
      const std::size_t slot = cursor.fetch_add(1);
      if (slot >= num_masks) break;
      try {
        run_mask(slot);
      } catch (...) {
        errors[slot] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    drain();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(drain);
    drain();
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

struct BestAgg {
  double best_acc = -1;
  double f1_at_best = -1;
  double best_f1 = -1;
  bool any = false;

  void feed(const GridRow& row) {
    any = true;
    if (row.acc > best_acc) {
      best_acc = row.acc;
      f1_at_best = row.f1;
    } else if (row.acc == best_acc) {
      f1_at_best = std::max(f1_at_best, row.f1);
    }
    best_f1 = std::max(best_f1, row.f1);
  }
};

}  // namespace

ExperimentReport run_experiment(const ExperimentPlan& plan) {
  if (plan.splits.empty() || plan.models.empty() || plan.classifiers.empty() ||
      plan.weight_masks.empty()) {
    throw Error("experiment plan has an empty list");
  }
  LabeledCorpus corpus;
  if (!plan.corpus_path.empty()) {
    corpus = parse_corpus(read_file(plan.corpus_path));
  } else {
    corpus = generate_regexp_benchmark(plan.generator);
  }

  std::unique_ptr<SolverBackend> backend = make_backend(plan.backend);
  ExperimentReport report;
  Rng seeder(plan.seed);

  for (std::size_t si = 0; si < plan.splits.size(); ++si) {
    const SplitSpec& split = plan.splits[si];
    const auto [train_corpus, test_corpus] =
        split_corpus(corpus, split.fraction);
    const Sample train = to_sample(train_corpus);
    std::vector<std::string> test_words;
    std::vector<bool> test_labels;
    for (const std::string& w : test_corpus.positives) {
      test_words.push_back(w);
      test_labels.push_back(true);
    }
    for (const std::string& w : test_corpus.negatives) {
      test_words.push_back(w);
      test_labels.push_back(false);
    }

    for (std::size_t mi = 0; mi < plan.models.size(); ++mi) {
      const ModelSpec& model = plan.models[mi];
      const std::string token = model_token(model);
      InferRequest request;
      request.sample = train;
      request.model = model;
      request.k = plan.k;
      request.k_max = plan.k_max;
      request.timeout_seconds = plan.timeout_seconds;
      request.seed = seeder.fork(si * 8191 + mi);
      request.ils_iterations = plan.ils_iterations;
      request.backend = backend.get();
      const InferenceResult result =
          plan.k >= 1 ? infer(request) : find_min_k(request);
      report.attempts.insert(report.attempts.end(), result.attempts.begin(),
                             result.attempts.end());
      if (result.status != InferenceResult::Status::Found) {
        report.failures.push_back(
            {split.label, token, status_word(result.status)});
        continue;
      }
      // For the dedicated-finals layout the raw (k+2)-state automaton is the
      // one that classifies; the reduced companion is a separate artifact.
      std::vector<GridRow> rows = evaluate_grid(
          plan, split, token, result.nfa, train, test_words, test_labels);
      report.grid.insert(report.grid.end(),
                         std::make_move_iterator(rows.begin()),
                         std::make_move_iterator(rows.end()));
    }
  }

  // Two labeled aggregations of the same grid: across every classifier
  // (one row per dataset x split x model) and per classifier.
  for (std::size_t si = 0; si < plan.splits.size(); ++si) {
    for (std::size_t mi = 0; mi < plan.models.size(); ++mi) {
      const std::string token = model_token(plan.models[mi]);
      BestAgg agg;
      for (const GridRow& row : report.grid) {
        if (row.split == plan.splits[si].label && row.model == token) {
          agg.feed(row);
        }
      }
      if (!agg.any) continue;
      report.bests.push_back({"by-dataset", plan.dataset,
                              plan.splits[si].label, token, agg.best_acc,
                              agg.f1_at_best, agg.best_f1,
                              agg.best_f1 > agg.f1_at_best});
    }
  }
  for (std::size_t si = 0; si < plan.splits.size(); ++si) {
    for (std::size_t mi = 0; mi < plan.models.size(); ++mi) {
      const std::string token = model_token(plan.models[mi]);
      for (ClassifierKind kind : plan.classifiers) {
        const std::string cls = classifier_token(kind);
        BestAgg agg;
        for (const GridRow& row : report.grid) {
          if (row.split == plan.splits[si].label && row.model == token &&
              row.classifier == cls) {
            agg.feed(row);
          }
        }
        if (!agg.any) continue;
        report.bests.push_back({"by-classifier", cls, plan.splits[si].label,
                                token, agg.best_acc, agg.f1_at_best,
                                agg.best_f1, agg.best_f1 > agg.f1_at_best});
      }
    }
  }
  return report;
}

std::string grid_csv(const ExperimentReport& report) {
  std::string out = "dataset,split,model,classifier,weights,accuracy,f1,tp,tn,fp,fn\n";
  for (const GridRow& row : report.grid) {
    out += row.dataset + ',' + row.split + ',' + row.model + ',' +
           row.classifier + ',' + std::to_string(row.weights) + ',' +
           format_double(row.acc) + ',' + format_double(row.f1) + ',' +
           std::to_string(row.counts.tp) + ',' +
           std::to_string(row.counts.tn) + ',' +
           std::to_string(row.counts.fp) + ',' +
           std::to_string(row.counts.fn) + '\n';
  }
  return out;
}

std::string summary_csv(const ExperimentReport& report) {
  std::string out =
      "section,group,split,model,best_accuracy,f1_at_best,best_f1,flag,"
      "best_accuracy_full,f1_at_best_full,best_f1_full\n";
  for (const BestRow& row : report.bests) {
    out += row.section + ',' + row.group + ',' + row.split + ',' + row.model +
           ',' + round2(row.best_acc) + ',' + round2(row.f1_at_best) + ',' +
           round2(row.best_f1) + ',' + (row.starred ? "*" : "") + ',' +
           format_double(row.best_acc) + ',' + format_double(row.f1_at_best) +
           ',' + format_double(row.best_f1) + '\n';
  }
  return out;
}

std::string failures_csv(const ExperimentReport& report) {
  std::string out = "split,model,status\n";
  for (const FailedCell& cell : report.failures) {
    out += cell.split + ',' + cell.model + ',' + cell.status + '\n';
  }
  return out;
}

void write_report(const ExperimentReport& report, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  write_file((dir / "grid.csv").string(), grid_csv(report));
  write_file((dir / "summary.csv").string(), summary_csv(report));
  write_file((dir / "failures.csv").string(), failures_csv(report));
  write_file((dir / "attempts.jsonl").string(),
             attempts_to_jsonl(report.attempts));
}

}  // namespace nfa3
