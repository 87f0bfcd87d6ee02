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

#ifndef NFA3_INFERENCE_HPP_
#define NFA3_INFERENCE_HPP_

#include <optional>

#include "nfa3/encoding.hpp"
#include "nfa3/solver.hpp"

namespace nfa3 {

enum class SplitKind {
  Prefix,         ///< every word unsplit: (w, lambda)
  Suffix,         ///< every word reversed role: (lambda, w)
  BestPrefix,     ///< greedy shared-prefix cover
  BestSuffix,     ///< greedy shared-suffix cover
  IlsRandom,      ///< local search from random cuts
  IlsBestPrefix,  ///< local search seeded with the prefix cover
  IlsBestSuffix,  ///< local search seeded with the suffix cover
};

struct ModelSpec {
  SplitKind split = SplitKind::Prefix;
  bool kplus2 = false;  ///< use the dedicated-finals layout
};

/// Canonical names: P, S, Pstar, Sstar, ILS-rand, ILS-P, ILS-S, each with
/// suffix "_k" or "_k2" for the layout (e.g. "Pstar_k2").
std::string model_token(const ModelSpec& model);
ModelSpec parse_model_token(const std::string& token);
std::string split_token(SplitKind split);
SplitKind parse_split_token(const std::string& token);

struct InferRequest {
  Sample sample;
  ModelSpec model;
  int k = 0;                     ///< fixed state count (>= 1) for infer()
  int min_k = 1;                 ///< search start for find_min_k()
  int k_max = 8;                 ///< search bound for find_min_k()
  double timeout_seconds = 900;  ///< per solver call
  std::uint64_t seed = 0;        ///< drives the ILS splittings
  int ils_iterations = 500;
  SolverBackend* backend = nullptr;  ///< defaults to the embedded solver
};

struct AttemptStats {
  std::string model;
  int k = 0;
  std::string status;  // "sat", "unsat", "timeout"
  double seconds = 0;
  std::size_t clauses = 0;
  std::size_t variables = 0;
  std::uint64_t conflicts = 0;
};

struct InferenceResult {
  enum class Status { Found, Infeasible, TimedOut };
  Status status = Status::Infeasible;
  Nfa3 nfa;                    ///< when Found; the k+2 automaton for _k2 models
  std::optional<Nfa3> reduced; ///< k-state companion for _k2 models
  int k = 0;                   ///< state count of the found model
  std::vector<AttemptStats> attempts;
};

/// Builds the splitting, encodes at the fixed request.k, solves, decodes,
/// and cross-checks the automaton against the sample.  A satisfying
/// assignment that decodes to an inconsistent automaton is an encoding bug
/// and raises InconsistentModel (ReductionInconsistent for the reduced
/// companion).
InferenceResult infer(const InferRequest& request);

/// Tries k = min_k, min_k + 1, ... up to request.k_max; returns the first
/// hit.  A timeout before any hit returns TimedOut; all-unsat returns
/// Infeasible.
InferenceResult find_min_k(const InferRequest& request);

/// The splitting a model spec induces on a sample (needs k and the seed for
/// the ILS variants).
Splitting make_splitting(const Sample& sample, const ModelSpec& model, int k,
                         std::uint64_t seed, int ils_iterations);

std::string attempts_to_jsonl(const std::vector<AttemptStats>& attempts);

}  // namespace nfa3

#endif  // NFA3_INFERENCE_HPP_
