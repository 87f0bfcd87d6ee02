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

#ifndef NFA3_SOLVER_HPP_
#define NFA3_SOLVER_HPP_

#include <memory>
#include <string>

#include "nfa3/cnf.hpp"

namespace nfa3 {

struct SolverStats {
  double seconds = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
};

struct SolveOutcome {
  enum class Status { Sat, Unsat, Timeout };
  Status status = Status::Unsat;
  std::vector<std::uint8_t> model;  ///< 1-based truth values; valid when Sat
  SolverStats stats;
};

/// Built-in CDCL solver: two-watched-literal propagation, first-UIP clause
/// learning, activity ordering with index tie-breaks (hence deterministic),
/// phase saving, Luby restarts, and glue-aware learned-clause reduction.
SolveOutcome solve_cnf(const Cnf& cnf, double timeout_seconds);

class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual SolveOutcome solve(const Cnf& cnf, double timeout_seconds) = 0;
  virtual std::string name() const = 0;
};

class EmbeddedBackend final : public SolverBackend {
 public:
  SolveOutcome solve(const Cnf& cnf, double timeout_seconds) override;
  std::string name() const override { return "embedded"; }
};

/// Runs `<command> <dimacs-file>` and reads the standard s/v answer lines.
/// The subprocess is killed at the deadline.  Reported models are verified
/// against the clause set; lies raise BackendFailure.
class ExternalBackend final : public SolverBackend {
 public:
  explicit ExternalBackend(std::string command)
      : command_(std::move(command)) {}
  SolveOutcome solve(const Cnf& cnf, double timeout_seconds) override;
  std::string name() const override { return command_; }

 private:
  std::string command_;
};

/// "" or "embedded" selects the built-in solver; anything else is taken as
/// an external solver command.
std::unique_ptr<SolverBackend> make_backend(const std::string& choice);

}  // namespace nfa3

#endif  // NFA3_SOLVER_HPP_
