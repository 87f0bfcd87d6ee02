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

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nfa3/eval.hpp"

namespace {

using namespace nfa3;

std::vector<std::string> read_word_list(const std::string& path) {
  std::vector<std::string> words;
  std::string text = read_file(path);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) words.push_back(std::move(line));
    pos = nl + 1;
  }
  return words;
}

struct GenArgs {
  RegexpBenchmarkSpec spec;
  std::string out;
};

struct InferArgs {
  std::string corpus;
  std::string model = "P";
  bool kplus2 = false;
  int k = 0;
  int min_k = 1;
  int k_max = 8;
  double timeout = 900;
  std::uint64_t seed = 0;
  int ils_iterations = 500;
  std::string solver;
  std::string stats;
  std::string out;
};

struct TransformArgs {
  std::string automaton;
  std::string corpus;
  WeightConfig weights;
  std::uint64_t path_budget = kDefaultPathBudget;
  std::string out;
};

struct ClassifyArgs {
  std::string automaton;
  std::string words;
  std::string classifier = "mm";
  std::string tie = "neg";
  std::uint64_t path_budget = kDefaultPathBudget;
  std::string out = "-";
};

struct BenchArgs {
  std::string plan;
  std::string out_dir;
};

int run_gen(const GenArgs& args) {
  LabeledCorpus corpus = generate_regexp_benchmark(args.spec);
  write_file(args.out, write_corpus(corpus));
  return 0;
}

int run_infer(const InferArgs& args, bool fixed_k) {
  LabeledCorpus corpus = parse_corpus(read_file(args.corpus));
  std::unique_ptr<SolverBackend> backend = make_backend(args.solver);

  InferRequest request;
  request.sample = to_sample(corpus);
  request.model = parse_model_token(args.model);
  if (args.kplus2) request.model.kplus2 = true;
  request.k = args.k;
  request.min_k = args.min_k;
  request.k_max = args.k_max;
  request.timeout_seconds = args.timeout;
  request.seed = args.seed;
  request.ils_iterations = args.ils_iterations;
  request.backend = backend.get();

  InferenceResult result = fixed_k ? infer(request) : find_min_k(request);
  if (!args.stats.empty()) {
    write_file(args.stats, attempts_to_jsonl(result.attempts));
  }
  switch (result.status) {
    case InferenceResult::Status::Found:
      break;
    case InferenceResult::Status::Infeasible:
      throw Error("no consistent automaton within the state bound");
    case InferenceResult::Status::TimedOut:
      throw Error("solver timed out before a model was found");
  }
  write_file(args.out, write_nfa(result.nfa));
  if (result.reduced) {
    write_file(args.out + ".reduced", write_nfa(*result.reduced));
  }
  return 0;
}

int run_transform(const TransformArgs& args) {
  Nfa3 nfa = read_nfa(read_file(args.automaton));
  LabeledCorpus corpus = parse_corpus(read_file(args.corpus));
  Sample sample = to_sample(corpus);
  FrequencyTables freq = compute_frequencies(nfa, sample, args.path_budget);
  WeightedNfa wffa = build_wffa(nfa, freq, args.weights);
  ProbabilisticNfa pnfa = to_probabilistic(nfa, wffa);
  write_file(args.out, write_pnfa(pnfa));
  return 0;
}

int run_classify(const ClassifyArgs& args) {
  ProbabilisticNfa pnfa = read_pnfa(read_file(args.automaton));
  const ClassifierKind kind = parse_classifier_token(args.classifier);
  const TieRule tie =
      args.tie == "pos" ? TieRule::Positive : TieRule::Negative;
  std::string out;
  for (const std::string& word : read_word_list(args.words)) {
    const AllScores scores = score_all(pnfa, word, args.path_budget);
    const ScorePair& pair = pick(scores, kind);
    const Decision d = decide(pair, tie);
    out += word + '\t' + format_double(pair.positive) + '\t' +
           format_double(pair.negative) + '\t' +
           (d == Decision::Positive ? "Positive" : "Negative") + '\n';
  }
  if (args.out == "-") {
    std::cout << out;
  } else {
    write_file(args.out, out);
  }
  return 0;
}

int run_bench(const BenchArgs& args) {
  ExperimentPlan plan = parse_plan(read_file(args.plan));
  ExperimentReport report = run_experiment(plan);
  write_report(report, args.out_dir);
  if (!report.failures.empty()) {
    std::cerr << "nfa3 bench: " << report.failures.size()
              << " inference cell(s) failed; see failures.csv\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"3-sort NFA inference, transformation, and classification"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand(
      "gen", "Generate a corpus by sampling a regular language");
  gen->add_option("--pattern", gen_args.spec.pattern,
                  "Regular expression defining the positive language")
      ->required();
  gen->add_option("--total", gen_args.spec.total,
                  "Total word count, half positive (default 200)");
  gen->add_option("--min-len", gen_args.spec.min_len,
                  "Shortest sampled length (default 1)");
  gen->add_option("--max-len", gen_args.spec.max_len,
                  "Longest sampled length (default 15)");
  gen->add_option("--seed", gen_args.spec.seed, "Generator seed");
  gen->add_option("-o,--out", gen_args.out, "Corpus output path")->required();

  InferArgs infer_args;
  CLI::App* infer_cmd =
      app.add_subcommand("infer", "Infer a consistent automaton from a corpus");
  infer_cmd->add_option("-c,--corpus", infer_args.corpus, "Corpus path")
      ->required();
  infer_cmd->add_option(
      "--model", infer_args.model,
      "Splitting model: P, S, Pstar, Sstar, ILS-rand, ILS-P, ILS-S "
      "(optionally suffixed _k or _k2)");
  infer_cmd->add_flag("--kplus2", infer_args.kplus2,
                      "Use the dedicated-finals layout (two extra states)");
  CLI::Option* k_opt =
      infer_cmd->add_option("--k", infer_args.k, "Fixed state count");
  CLI::Option* min_k_opt = infer_cmd->add_option(
      "--min-k", infer_args.min_k, "Search upward from this state count");
  infer_cmd->add_option("--k-max", infer_args.k_max,
                        "Upper bound of the state-count search (default 8)");
  k_opt->excludes(min_k_opt);
  infer_cmd->add_option("--timeout", infer_args.timeout,
                        "Seconds per solver call (default 900)");
  infer_cmd->add_option("--seed", infer_args.seed, "Seed for the ILS models");
  infer_cmd->add_option("--ils-iterations", infer_args.ils_iterations,
                        "Local-search iteration budget (default 500)");
  infer_cmd
      ->add_option("--solver", infer_args.solver,
                   "SAT backend: 'embedded' or an external solver command")
      ->envname("NFA3_SOLVER");
  infer_cmd->add_option("--stats", infer_args.stats,
                        "Write per-attempt statistics (JSON lines) here");
  infer_cmd->add_option("-o,--out", infer_args.out, "Automaton output path")
      ->required();

  TransformArgs transform_args;
  CLI::App* transform = app.add_subcommand(
      "transform", "Turn an automaton plus its training corpus into a "
                   "probabilistic automaton");
  transform
      ->add_option("-a,--automaton", transform_args.automaton,
                   "Automaton path")
      ->required();
  transform->add_option("-c,--corpus", transform_args.corpus, "Corpus path")
      ->required();
  WeightConfig& w = transform_args.weights;
  transform->add_option("--w-f-pos-hit", w.f_pos_hit,
                        "Weight: positive word ends in an accepting state");
  transform->add_option("--w-f-pos-unk", w.f_pos_unk,
                        "Weight: positive word ends in a neutral state");
  transform->add_option("--w-f-neg-hit", w.f_neg_hit,
                        "Weight: negative word ends in a rejecting state");
  transform->add_option("--w-f-neg-unk", w.f_neg_unk,
                        "Weight: negative word ends in a neutral state");
  transform->add_option("--w-d-pos-hit", w.d_pos_hit,
                        "Weight: transition on an accepting-ended positive run");
  transform->add_option("--w-d-pos-unk", w.d_pos_unk,
                        "Weight: transition on a neutral-ended positive run");
  transform->add_option("--w-d-neg-hit", w.d_neg_hit,
                        "Weight: transition on a rejecting-ended negative run");
  transform->add_option("--w-d-neg-unk", w.d_neg_unk,
                        "Weight: transition on a neutral-ended negative run");
  transform->add_option("--path-budget", transform_args.path_budget,
                        "Cap on runs per word (default 100000)");
  transform
      ->add_option("-o,--out", transform_args.out,
                   "Probabilistic automaton output path")
      ->required();

  ClassifyArgs classify_args;
  CLI::App* classify = app.add_subcommand(
      "classify", "Score a word list against a probabilistic automaton");
  classify
      ->add_option("-a,--automaton", classify_args.automaton,
                   "Probabilistic automaton path")
      ->required();
  classify
      ->add_option("-w,--words", classify_args.words,
                   "Word list, one word per line")
      ->required();
  classify
      ->add_option("--classifier", classify_args.classifier,
                   "mm, ma, sm or sa (default mm)")
      ->check(CLI::IsMember({"mm", "ma", "sm", "sa"}));
  classify
      ->add_option("--tie", classify_args.tie,
                   "Decision on tied scores: pos or neg (default neg)")
      ->check(CLI::IsMember({"pos", "neg"}));
  classify->add_option("--path-budget", classify_args.path_budget,
                       "Cap on runs per word (default 100000)");
  classify->add_option("-o,--out", classify_args.out,
                       "TSV output path, '-' for stdout");

  BenchArgs bench_args;
  CLI::App* bench =
      app.add_subcommand("bench", "Run an experiment plan and write reports");
  bench->add_option("-p,--plan", bench_args.plan, "Experiment plan path")
      ->required();
  bench->add_option("-o,--out-dir", bench_args.out_dir, "Report directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string stage = app.get_subcommands().front()->get_name();
  try {
    if (gen->parsed()) return run_gen(gen_args);
    if (infer_cmd->parsed())
      return run_infer(infer_args, k_opt->count() > 0);
    if (transform->parsed()) return run_transform(transform_args);
    if (classify->parsed()) return run_classify(classify_args);
    if (bench->parsed()) return run_bench(bench_args);
  } catch (const std::exception& e) {
    std::cerr << "nfa3 " << stage << ": " << e.what() << '\n';
    return 1;
  }
  return 2;
}
