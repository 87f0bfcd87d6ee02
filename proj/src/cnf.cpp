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

#include "nfa3/cnf.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace nfa3 {

namespace {

class Lowerer {
 public:
  explicit Lowerer(const Formula& f) : formula_(f) {
    out_.cnf.num_vars = f.num_vars;
    out_.num_original = f.num_vars;
    next_ = f.num_vars;
  }

  LoweredCnf run() {
    for (const Constraint& c : formula_.constraints) emit(c);
    out_.cnf.num_vars = next_;
    return std::move(out_);
  }

 private:
  const Formula& formula_;
  LoweredCnf out_;
  int next_ = 0;
  std::map<std::pair<int, std::vector<Lit>>, Lit> gates_;

  void add_clause(std::vector<Lit> lits) {
    std::sort(lits.begin(), lits.end(), [](Lit a, Lit b) {
      int va = std::abs(a), vb = std::abs(b);
      return va != vb ? va < vb : a > b;
    });
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (std::size_t i = 0; i + 1 < lits.size(); ++i)
      if (lits[i] == -lits[i + 1]) return;  // tautology
    if (lits.empty()) throw Error("empty clause produced by lowering");
    out_.cnf.clauses.push_back(std::move(lits));
  }

  Lit lower_node(const FNode& n) {
    if (n.kind == FNode::Leaf) return n.lit;
    std::vector<Lit> kids;
    kids.reserve(n.kids.size());
    for (const FNode& kid : n.kids) kids.push_back(lower_node(kid));
    if (kids.size() == 1) return kids[0];
    if (kids.empty()) throw Error("empty connective in formula");
    auto key = std::make_pair(n.kind == FNode::And ? 0 : 1, kids);
    auto it = gates_.find(key);
    if (it != gates_.end()) return it->second;
    Lit g = ++next_;
    if (n.kind == FNode::And) {
      std::vector<Lit> back{g};
      for (Lit l : kids) {
        add_clause({-g, l});
        back.push_back(-l);
      }
      add_clause(std::move(back));
    } else {
      std::vector<Lit> fwd{-g};
      for (Lit l : kids) {
        add_clause({g, -l});
        fwd.push_back(l);
      }
      add_clause(std::move(fwd));
    }
    gates_.emplace(std::move(key), g);
    return g;
  }

  void assert_node(const FNode& n) {
    switch (n.kind) {
      case FNode::Leaf:
        add_clause({n.lit});
        return;
      case FNode::And:
        for (const FNode& kid : n.kids) assert_node(kid);
        return;
      case FNode::Or: {
        std::vector<Lit> lits;
        for (const FNode& kid : n.kids) lits.push_back(lower_node(kid));
        add_clause(std::move(lits));
        return;
      }
    }
  }

  void emit(const Constraint& c) {
    switch (c.shape) {
      case Constraint::Clause:
        add_clause(c.lits);
        return;
      case Constraint::Assert:
        assert_node(c.node);
        return;
      case Constraint::IffDef: {
        const Lit p = c.lhs;
        const FNode& rhs = c.node;
        if (rhs.kind == FNode::Leaf) {
          add_clause({-p, rhs.lit});
          add_clause({p, -rhs.lit});
          return;
        }
        std::vector<Lit> kids;
        for (const FNode& kid : rhs.kids) kids.push_back(lower_node(kid));
        if (kids.empty()) throw Error("empty connective in formula");
        if (rhs.kind == FNode::And) {
          std::vector<Lit> back{p};
          for (Lit l : kids) {
            add_clause({-p, l});
            back.push_back(-l);
          }
          add_clause(std::move(back));
        } else {
          std::vector<Lit> fwd{-p};
          for (Lit l : kids) {
            add_clause({p, -l});
            fwd.push_back(l);
          }
          add_clause(std::move(fwd));
        }
        return;
      }
    }
  }
};

}  // namespace

LoweredCnf lower_to_cnf(const Formula& formula) {
  return Lowerer(formula).run();
}

std::string emit_dimacs(const Cnf& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.num_vars << " " << cnf.clauses.size() << "\n";
  for (const auto& clause : cnf.clauses) {
    for (Lit l : clause) out << l << " ";
    out << "0\n";
  }
  return out.str();
}

Cnf parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Cnf cnf;
  bool have_header = false;
  std::size_t expected = 0;
  std::vector<Lit> cur;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (!have_header) {
      std::string p, kind;
      long long v = 0, c = 0;
      if (!(ls >> p >> kind >> v >> c) || p != "p" || kind != "cnf" || v < 0 ||
          c < 0)
        throw FormatError("bad DIMACS header: " + line);
      cnf.num_vars = static_cast<int>(v);
      expected = static_cast<std::size_t>(c);
      have_header = true;
      continue;
    }
    long long l;
    while (ls >> l) {
      if (l == 0) {
        cnf.clauses.push_back(cur);
        cur.clear();
      } else {
        if (std::llabs(l) > cnf.num_vars)
          throw FormatError("literal out of range: " + std::to_string(l));
        cur.push_back(static_cast<Lit>(l));
      }
    }
  }
  if (!have_header) throw FormatError("missing DIMACS header");
  if (!cur.empty()) throw FormatError("unterminated clause");
  if (cnf.clauses.size() != expected)
    throw FormatError("clause count mismatch in DIMACS input");
  return cnf;
}

bool satisfies(const Cnf& cnf, const std::vector<std::uint8_t>& assignment) {
  for (const auto& clause : cnf.clauses) {
    bool sat = false;
    for (Lit l : clause) {
      std::size_t v = static_cast<std::size_t>(std::abs(l));
      bool tv = v < assignment.size() && assignment[v] != 0;
      if (l > 0 ? tv : !tv) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

}  // namespace nfa3
