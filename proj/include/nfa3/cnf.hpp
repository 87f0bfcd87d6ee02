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

#ifndef NFA3_CNF_HPP_
#define NFA3_CNF_HPP_

#include <string>
#include <vector>

#include "nfa3/formula.hpp"

namespace nfa3 {

struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<Lit>> clauses;
};

struct LoweredCnf {
  Cnf cnf;
  int num_original = 0;  ///< ids 1..num_original are formula variables;
                         ///< higher ids are Tseitin gates
};

/// Tseitin transformation with full (two-sided) gate definitions, so the
/// CNF models projected onto the original variables are exactly the models
/// of the formula.  Identical AND/OR gates are shared.  Clauses are
/// deduplicated literal-wise; tautologies are dropped.
LoweredCnf lower_to_cnf(const Formula& formula);

std::string emit_dimacs(const Cnf& cnf);
Cnf parse_dimacs(const std::string& text);

/// True iff `assignment` (1-based, may extend past num_vars) satisfies
/// every clause.  Used to double-check external solvers.
bool satisfies(const Cnf& cnf, const std::vector<std::uint8_t>& assignment);

}  // namespace nfa3

#endif  // NFA3_CNF_HPP_
