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

#include "nfa3/inference.hpp"

#include <algorithm>

#include <json.hpp>

namespace nfa3 {

std::string split_token(SplitKind split) {
  switch (split) {
    case SplitKind::Prefix: return "P";
    case SplitKind::Suffix: return "S";
    case SplitKind::BestPrefix: return "Pstar";
    case SplitKind::BestSuffix: return "Sstar";
    case SplitKind::IlsRandom: return "ILS-rand";
    case SplitKind::IlsBestPrefix: return "ILS-P";
    case SplitKind::IlsBestSuffix: return "ILS-S";
  }
  return "?";
}

SplitKind parse_split_token(const std::string& token) {
  if (token == "P") return SplitKind::Prefix;
  if (token == "S") return SplitKind::Suffix;
  if (token == "Pstar") return SplitKind::BestPrefix;
  if (token == "Sstar") return SplitKind::BestSuffix;
  if (token == "ILS-rand") return SplitKind::IlsRandom;
  if (token == "ILS-P") return SplitKind::IlsBestPrefix;
  if (token == "ILS-S") return SplitKind::IlsBestSuffix;
  throw FormatError("unknown splitting model: " + token);
}

std::string model_token(const ModelSpec& model) {
  return split_token(model.split) + (model.kplus2 ? "_k2" : "_k");
}

ModelSpec parse_model_token(const std::string& token) {
  ModelSpec spec;
  std::string base = token;
  if (token.size() > 3 && token.rfind("_k2") == token.size() - 3) {
    spec.kplus2 = true;
    base = token.substr(0, token.size() - 3);
  } else if (token.size() > 2 && token.rfind("_k") == token.size() - 2) {
    base = token.substr(0, token.size() - 2);
  }
  spec.split = parse_split_token(base);
  return spec;
}

Splitting make_splitting(const Sample& sample, const ModelSpec& model, int k,
                         std::uint64_t seed, int ils_iterations) {
  IlsConfig ils;
  ils.max_iterations = ils_iterations;
  ils.seed = seed;
  switch (model.split) {
    case SplitKind::Prefix: return split_all_prefix(sample);
    case SplitKind::Suffix: return split_all_suffix(sample);
    case SplitKind::BestPrefix: return split_best_prefix(sample);
    case SplitKind::BestSuffix: return split_best_suffix(sample);
    case SplitKind::IlsRandom:
      ils.start = IlsStart::Random;
      return ils_optimize(sample, k, ils);
    case SplitKind::IlsBestPrefix:
      ils.start = IlsStart::BestPrefix;
      return ils_optimize(sample, k, ils);
    case SplitKind::IlsBestSuffix:
      ils.start = IlsStart::BestSuffix;
      return ils_optimize(sample, k, ils);
  }
  throw Error("unreachable");
}

namespace {

InferenceResult infer_at(const InferRequest& request, int k,
                         SolverBackend& backend) {
  InferenceResult result;
  Splitting split = make_splitting(request.sample, request.model, k,
                                   request.seed, request.ils_iterations);
  EncodeResult enc = request.model.kplus2
                         ? encode_core_k2(request.sample, split, k)
                         : encode_core_k(request.sample, split, k);
  LoweredCnf lowered = lower_to_cnf(enc.formula);
  SolveOutcome outcome = backend.solve(lowered.cnf, request.timeout_seconds);

  AttemptStats stats;
  stats.model = model_token(request.model);
  stats.k = k;
  stats.seconds = outcome.stats.seconds;
  stats.clauses = lowered.cnf.clauses.size();
  stats.variables = static_cast<std::size_t>(lowered.cnf.num_vars);
  stats.conflicts = outcome.stats.conflicts;

  switch (outcome.status) {
    case SolveOutcome::Status::Timeout:
      stats.status = "timeout";
      result.status = InferenceResult::Status::TimedOut;
      break;
    case SolveOutcome::Status::Unsat:
      stats.status = "unsat";
      result.status = InferenceResult::Status::Infeasible;
      break;
    case SolveOutcome::Status::Sat: {
      stats.status = "sat";
      result.status = InferenceResult::Status::Found;
      result.k = k;
      if (request.model.kplus2) {
        DecodedK2 dec =
            decode_nfa_k2(enc.vars, request.sample.alphabet, outcome.model);
        if (!is_consistent(dec.nfa, request.sample))
          throw InconsistentModel(
              "decoded automaton disagrees with the sample");
        Nfa3 reduced = reduce_k2_to_k(dec.nfa, dec.astar, dec.rstar);
        if (!is_consistent(reduced, request.sample))
          throw ReductionInconsistent(
              "reduced automaton disagrees with the sample");
        result.nfa = std::move(dec.nfa);
        result.reduced = std::move(reduced);
      } else {
        Nfa3 nfa = decode_nfa(enc.vars, request.sample.alphabet, outcome.model);
        if (!is_consistent(nfa, request.sample))
          throw InconsistentModel(
              "decoded automaton disagrees with the sample");
        result.nfa = std::move(nfa);
      }
      break;
    }
  }
  result.attempts.push_back(std::move(stats));
  return result;
}

}  // namespace

InferenceResult infer(const InferRequest& request) {
  if (request.k < 1) throw Error("fixed state count must be at least 1");
  EmbeddedBackend fallback;
  SolverBackend& backend =
      request.backend ? *request.backend : static_cast<SolverBackend&>(fallback);
  return infer_at(request, request.k, backend);
}

InferenceResult find_min_k(const InferRequest& request) {
  if (request.k_max < 1) throw Error("state bound must be at least 1");
  if (request.min_k > request.k_max)
    throw Error("search start exceeds the state bound");
  EmbeddedBackend fallback;
  SolverBackend& backend =
      request.backend ? *request.backend : static_cast<SolverBackend&>(fallback);
  InferenceResult accum;
  for (int k = std::max(1, request.min_k); k <= request.k_max; ++k) {
    InferenceResult step = infer_at(request, k, backend);
    for (auto& a : step.attempts) accum.attempts.push_back(std::move(a));
    if (step.status == InferenceResult::Status::Found) {
      step.attempts = std::move(accum.attempts);
      return step;
    }
    if (step.status == InferenceResult::Status::TimedOut) {
      accum.status = InferenceResult::Status::TimedOut;
      return accum;
    }
  }
  accum.status = InferenceResult::Status::Infeasible;
  return accum;
}

std::string attempts_to_jsonl(const std::vector<AttemptStats>& attempts) {
  std::string out;
  for (const AttemptStats& a : attempts) {
    nlohmann::json j{{"model", a.model},       {"k", a.k},
                     {"status", a.status},     {"seconds", a.seconds},
                     {"clauses", a.clauses},   {"variables", a.variables},
                     {"conflicts", a.conflicts}};
    out += j.dump();
    out += "\n";
  }
  return out;
}

}  // namespace nfa3
