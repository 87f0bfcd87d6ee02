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

// Standalone DIMACS front-end for the embedded solver.  Speaks the usual
// competition conventions (s/v lines, exit 10 for SAT, 20 for UNSAT), which
// also makes it a drop-in stand-in for an external solver command.

#include <cstdlib>
#include <iostream>
#include <string>

#include "nfa3/solver.hpp"

int main(int argc, char** argv) {
  if (argc < 2 || argc > 3) {
    std::cerr << "usage: nfa3-dimacs <cnf-file> [timeout-seconds]\n";
    return 2;
  }
  double timeout = 1e9;
  if (argc == 3) {
    char* end = nullptr;
    timeout = std::strtod(argv[2], &end);
    if (end == argv[2] || *end || timeout <= 0) {
      std::cerr << "usage: nfa3-dimacs <cnf-file> [timeout-seconds]\n";
      return 2;
    }
  }
  try {
    nfa3::Cnf cnf = nfa3::parse_dimacs(nfa3::read_file(argv[1]));
    nfa3::SolveOutcome outcome = nfa3::solve_cnf(cnf, timeout);
    switch (outcome.status) {
      case nfa3::SolveOutcome::Status::Sat: {
        std::cout << "s SATISFIABLE\n";
        std::string line = "v";
        for (int v = 1; v <= cnf.num_vars; ++v) {
          line += outcome.model[static_cast<std::size_t>(v)] ? " " : " -";
          line += std::to_string(v);
          if (line.size() > 70) {
            std::cout << line << '\n';
            line = "v";
          }
        }
        std::cout << line << " 0\n";
        return 10;
      }
      case nfa3::SolveOutcome::Status::Unsat:
        std::cout << "s UNSATISFIABLE\n";
        return 20;
      case nfa3::SolveOutcome::Status::Timeout:
        std::cout << "s UNKNOWN\n";
        return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "nfa3-dimacs: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
