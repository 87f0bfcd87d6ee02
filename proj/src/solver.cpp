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

#include "nfa3/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>

namespace nfa3 {

namespace {

using Clock = std::chrono::steady_clock;

inline int var_of(Lit l) { return std::abs(l); }
inline std::size_t lit_idx(Lit l) {
  return 2 * static_cast<std::size_t>(var_of(l) - 1) + (l < 0 ? 1 : 0);
}

constexpr std::int8_t kUndef = -1;

// Luby restart sequence: 1 1 2 1 1 2 4 1 1 2 1 1 2 4 8 ...
std::uint64_t luby(std::uint64_t i) {
  std::uint64_t k = 1;
  while ((1ULL << k) - 1 < i + 1) ++k;
  while ((1ULL << k) - 1 != i + 1) {
    i -= (1ULL << (k - 1)) - 1;
    k = 1;
    while ((1ULL << k) - 1 < i + 1) ++k;
  }
  return 1ULL << (k - 1);
}

// Max-heap over variables ordered by activity, ties broken toward smaller
// indices so identical runs replay identically.
class VarOrder {
 public:
  VarOrder(int nvars, const std::vector<double>& act)
      : act_(act), pos_(static_cast<std::size_t>(nvars) + 1, -1) {
    for (int v = 1; v <= nvars; ++v) push(v);
  }

  bool less(int a, int b) const {  // a below b
    std::size_t ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
    if (act_[ua] != act_[ub]) return act_[ua] < act_[ub];
    return a > b;
  }

  void push(int v) {
    if (pos_[static_cast<std::size_t>(v)] >= 0) return;
    heap_.push_back(v);
    pos_[static_cast<std::size_t>(v)] = static_cast<int>(heap_.size()) - 1;
    up(static_cast<int>(heap_.size()) - 1);
  }

  bool empty() const { return heap_.empty(); }

  int pop() {
    int top = heap_[0];
    pos_[static_cast<std::size_t>(top)] = -1;
    if (heap_.size() > 1) {
      heap_[0] = heap_.back();
      pos_[static_cast<std::size_t>(heap_[0])] = 0;
    }
    heap_.pop_back();
    if (!heap_.empty()) down(0);
    return top;
  }

  void bumped(int v) {
    int p = pos_[static_cast<std::size_t>(v)];
    if (p >= 0) up(p);
  }

 private:
  const std::vector<double>& act_;
  std::vector<int> heap_;
  std::vector<int> pos_;

  void up(int i) {
    int v = heap_[static_cast<std::size_t>(i)];
    while (i > 0) {
      int parent = (i - 1) / 2;
      if (!less(heap_[static_cast<std::size_t>(parent)], v)) break;
      heap_[static_cast<std::size_t>(i)] = heap_[static_cast<std::size_t>(parent)];
      pos_[static_cast<std::size_t>(heap_[static_cast<std::size_t>(i)])] = i;
      i = parent;
    }
    heap_[static_cast<std::size_t>(i)] = v;
    pos_[static_cast<std::size_t>(v)] = i;
  }

  void down(int i) {
    int v = heap_[static_cast<std::size_t>(i)];
    const int n = static_cast<int>(heap_.size());
    for (;;) {
      int l = 2 * i + 1, r = 2 * i + 2, best = i;
      int bv = v;
      if (l < n && less(bv, heap_[static_cast<std::size_t>(l)])) {
        best = l;
        bv = heap_[static_cast<std::size_t>(l)];
      }
      if (r < n && less(bv, heap_[static_cast<std::size_t>(r)])) {
        best = r;
        bv = heap_[static_cast<std::size_t>(r)];
      }
      if (best == i) break;
      heap_[static_cast<std::size_t>(i)] = heap_[static_cast<std::size_t>(best)];
      pos_[static_cast<std::size_t>(heap_[static_cast<std::size_t>(i)])] = i;
      i = best;
    }
    heap_[static_cast<std::size_t>(i)] = v;
    pos_[static_cast<std::size_t>(v)] = i;
  }
};

class Cdcl {
 public:
  explicit Cdcl(const Cnf& cnf)
      : nvars_(cnf.num_vars),
        assigns_(static_cast<std::size_t>(nvars_) + 1, kUndef),
        level_(static_cast<std::size_t>(nvars_) + 1, 0),
        reason_(static_cast<std::size_t>(nvars_) + 1, -1),
        phase_(static_cast<std::size_t>(nvars_) + 1, 0),
        activity_(static_cast<std::size_t>(nvars_) + 1, 0.0),
        seen_(static_cast<std::size_t>(nvars_) + 1, 0),
        watches_(2 * static_cast<std::size_t>(nvars_)) {
    for (const auto& in : cnf.clauses) {
      std::vector<Lit> lits(in);
      std::sort(lits.begin(), lits.end(), [](Lit a, Lit b) {
        return var_of(a) != var_of(b) ? var_of(a) < var_of(b) : a > b;
      });
      lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
      bool taut = false;
      for (std::size_t i = 0; i + 1 < lits.size(); ++i)
        if (lits[i] == -lits[i + 1]) taut = true;
      if (taut) continue;
      if (lits.empty()) {
        contradiction_ = true;
        return;
      }
      if (lits.size() == 1) {
        initial_units_.push_back(lits[0]);
        continue;
      }
      // Seed the decision order with occurrence counts: variables shared by
      // many clauses (e.g. the defining atoms of heavily reused gates) are
      // decided before variables that merely propagate from them.
      for (Lit l : lits) activity_[static_cast<std::size_t>(var_of(l))] += 1.0;
      attach(add_clause(std::move(lits), /*learned=*/false));
    }
  }

  SolveOutcome run(double timeout_seconds) {
    SolveOutcome out;
    auto start = Clock::now();
    auto deadline = start + std::chrono::duration_cast<Clock::duration>(
                                std::chrono::duration<double>(timeout_seconds));
    auto finish = [&](SolveOutcome::Status st) {
      out.status = st;
      out.stats.seconds =
          std::chrono::duration<double>(Clock::now() - start).count();
      out.stats.conflicts = conflicts_;
      out.stats.decisions = decisions_;
      out.stats.propagations = propagations_;
      return out;
    };

    if (contradiction_) return finish(SolveOutcome::Status::Unsat);
    for (Lit l : initial_units_) {
      if (value(l) == 0) return finish(SolveOutcome::Status::Unsat);
      if (value(l) == kUndef) enqueue(l, -1);
    }
    if (propagate() >= 0) return finish(SolveOutcome::Status::Unsat);

    VarOrder order(nvars_, activity_);
    order_ = &order;

    std::uint64_t max_learnts =
        std::max<std::uint64_t>(4000, db_.size() / 3);
    std::uint64_t restart_no = 0;
    std::uint64_t conflict_budget = 64 * luby(restart_no);
    std::uint64_t conflicts_here = 0;

    for (;;) {
      int confl = propagate();
      if (confl >= 0) {
        ++conflicts_;
        ++conflicts_here;
        if (current_level() == 0) return finish(SolveOutcome::Status::Unsat);
        std::vector<Lit> learnt;
        int back_level, lbd;
        analyze(confl, learnt, back_level, lbd);
        backtrack(back_level);
        if (learnt.size() == 1) {
          enqueue(learnt[0], -1);
        } else {
          int ci = add_clause(std::move(learnt), /*learned=*/true);
          db_[static_cast<std::size_t>(ci)].lbd = lbd;
          db_[static_cast<std::size_t>(ci)].act = cla_inc_;
          attach(ci);
          enqueue(db_[static_cast<std::size_t>(ci)].lits[0], ci);
        }
        var_inc_ /= 0.95;
        cla_inc_ /= 0.999;
        if ((conflicts_ & 511) == 0 && Clock::now() > deadline)
          return finish(SolveOutcome::Status::Timeout);
      } else {
        if (conflicts_here >= conflict_budget) {
          conflicts_here = 0;
          conflict_budget = 64 * luby(++restart_no);
          backtrack(0);
          if (Clock::now() > deadline)
            return finish(SolveOutcome::Status::Timeout);
          continue;
        }
        if (learned_count_ >= max_learnts) {
          reduce_db();
          max_learnts = max_learnts + max_learnts / 6;
        }
        // Pick a branch variable.
        int v = 0;
        while (!order.empty()) {
          int cand = order.pop();
          if (assigns_[static_cast<std::size_t>(cand)] == kUndef) {
            v = cand;
            break;
          }
        }
        if (v == 0) {  // everything assigned: model found
          out.model.assign(static_cast<std::size_t>(nvars_) + 1, 0);
          for (int x = 1; x <= nvars_; ++x)
            out.model[static_cast<std::size_t>(x)] =
                assigns_[static_cast<std::size_t>(x)] == 1;
          return finish(SolveOutcome::Status::Sat);
        }
        ++decisions_;
        trail_lim_.push_back(static_cast<int>(trail_.size()));
        enqueue(phase_[static_cast<std::size_t>(v)] ? pos(v) : neg(v), -1);
      }
    }
  }

 private:
  struct Clause {
    std::vector<Lit> lits;
    bool learned = false;
    bool dead = false;
    double act = 0;
    int lbd = 0;
  };

  int nvars_;
  bool contradiction_ = false;
  std::vector<Lit> initial_units_;
  std::vector<Clause> db_;
  std::vector<std::int8_t> assigns_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<std::uint8_t> phase_;
  std::vector<double> activity_;
  std::vector<Lit> minimize_stack_;
  std::vector<std::uint8_t> seen_;
  std::vector<std::vector<int>> watches_;  // lit index -> clause ids
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  std::uint64_t conflicts_ = 0, decisions_ = 0, propagations_ = 0;
  std::uint64_t learned_count_ = 0;
  double var_inc_ = 1.0, cla_inc_ = 1.0;
  VarOrder* order_ = nullptr;

  std::int8_t value(Lit l) const {
    std::int8_t a = assigns_[static_cast<std::size_t>(var_of(l))];
    if (a == kUndef) return kUndef;
    return l > 0 ? a : static_cast<std::int8_t>(1 - a);
  }

  int current_level() const { return static_cast<int>(trail_lim_.size()); }

  int add_clause(std::vector<Lit> lits, bool learned) {
    Clause c;
    c.lits = std::move(lits);
    c.learned = learned;
    if (learned) ++learned_count_;
    db_.push_back(std::move(c));
    return static_cast<int>(db_.size()) - 1;
  }

  void attach(int ci) {
    const auto& lits = db_[static_cast<std::size_t>(ci)].lits;
    watches_[lit_idx(lits[0])].push_back(ci);
    watches_[lit_idx(lits[1])].push_back(ci);
  }

  void enqueue(Lit l, int from) {
    int v = var_of(l);
    assigns_[static_cast<std::size_t>(v)] = l > 0 ? 1 : 0;
    level_[static_cast<std::size_t>(v)] = current_level();
    reason_[static_cast<std::size_t>(v)] = from;
    phase_[static_cast<std::size_t>(v)] = l > 0;
    trail_.push_back(l);
  }

  void backtrack(int to_level) {
    if (current_level() <= to_level) return;
    int bound = trail_lim_[static_cast<std::size_t>(to_level)];
    for (int i = static_cast<int>(trail_.size()) - 1; i >= bound; --i) {
      int v = var_of(trail_[static_cast<std::size_t>(i)]);
      assigns_[static_cast<std::size_t>(v)] = kUndef;
      reason_[static_cast<std::size_t>(v)] = -1;
      if (order_) order_->push(v);
    }
    trail_.resize(static_cast<std::size_t>(bound));
    trail_lim_.resize(static_cast<std::size_t>(to_level));
    qhead_ = trail_.size();
  }

  // Returns the conflicting clause id, or -1.
  int propagate() {
    while (qhead_ < trail_.size()) {
      Lit p = trail_[qhead_++];
      ++propagations_;
      auto& ws = watches_[lit_idx(-p)];  // clauses watching the now-false -p
      std::size_t i = 0, j = 0;
      while (i < ws.size()) {
        int ci = ws[i];
        auto& c = db_[static_cast<std::size_t>(ci)];
        if (c.dead) {
          ++i;
          continue;
        }
        auto& lits = c.lits;
        if (lits[0] == -p) std::swap(lits[0], lits[1]);
        if (value(lits[0]) == 1) {  // already satisfied
          ws[j++] = ws[i++];
          continue;
        }
        bool moved = false;
        for (std::size_t t = 2; t < lits.size(); ++t) {
          if (value(lits[t]) != 0) {
            std::swap(lits[1], lits[t]);
            watches_[lit_idx(lits[1])].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) {
          ++i;
          continue;
        }
        ws[j++] = ws[i++];
        if (value(lits[0]) == 0) {  // conflict
          while (i < ws.size()) ws[j++] = ws[i++];
          ws.resize(j);
          qhead_ = trail_.size();
          return ci;
        }
        enqueue(lits[0], ci);
      }
      ws.resize(j);
    }
    return -1;
  }

  void bump_var(int v) {
    activity_[static_cast<std::size_t>(v)] += var_inc_;
    if (activity_[static_cast<std::size_t>(v)] > 1e100) {
      for (int x = 1; x <= nvars_; ++x) activity_[static_cast<std::size_t>(x)] *= 1e-100;
      var_inc_ *= 1e-100;
    }
    if (order_) order_->bumped(v);
  }

  void bump_clause(Clause& c) {
    c.act += cla_inc_;
    if (c.act > 1e20) {
      for (auto& d : db_)
        if (d.learned) d.act *= 1e-20;
      cla_inc_ *= 1e-20;
    }
  }

  // First-UIP learning with basic self-subsumption minimization.
  void analyze(int confl, std::vector<Lit>& learnt, int& back_level,
               int& lbd) {
    learnt.assign(1, 0);
    std::vector<int> marked;  // every var whose seen_ flag we set
    int path = 0;
    Lit p = 0;
    int index = static_cast<int>(trail_.size()) - 1;
    int cur = confl;
    do {
      Clause& c = db_[static_cast<std::size_t>(cur)];
      if (c.learned) bump_clause(c);
      for (std::size_t t = (p == 0 ? 0 : 1); t < c.lits.size(); ++t) {
        Lit q = c.lits[t];
        int v = var_of(q);
        if (seen_[static_cast<std::size_t>(v)] ||
            level_[static_cast<std::size_t>(v)] == 0)
          continue;
        seen_[static_cast<std::size_t>(v)] = 1;
        marked.push_back(v);
        bump_var(v);
        if (level_[static_cast<std::size_t>(v)] >= current_level())
          ++path;
        else
          learnt.push_back(q);
      }
      while (!seen_[static_cast<std::size_t>(var_of(
          trail_[static_cast<std::size_t>(index)]))])
        --index;
      p = trail_[static_cast<std::size_t>(index)];
      cur = reason_[static_cast<std::size_t>(var_of(p))];
      seen_[static_cast<std::size_t>(var_of(p))] = 0;
      --index;
      --path;
    } while (path > 0);
    learnt[0] = -p;

    // Drop literals whose reasons resolve away against the rest of the
    // clause, following implication chains all the way down (bounded to the
    // decision levels already present, so the clause never grows).
    std::uint32_t abstract_levels = 0;
    for (std::size_t t = 1; t < learnt.size(); ++t)
      abstract_levels |=
          abstract_level(var_of(learnt[t]));
    std::size_t kept = 1;
    for (std::size_t t = 1; t < learnt.size(); ++t) {
      int v = var_of(learnt[t]);
      if (reason_[static_cast<std::size_t>(v)] < 0 ||
          !lit_redundant(learnt[t], abstract_levels, marked))
        learnt[kept++] = learnt[t];
    }
    learnt.resize(kept);

    for (int v : marked) seen_[static_cast<std::size_t>(v)] = 0;

    if (learnt.size() == 1) {
      back_level = 0;
    } else {
      std::size_t best = 1;
      for (std::size_t t = 2; t < learnt.size(); ++t)
        if (level_[static_cast<std::size_t>(var_of(learnt[t]))] >
            level_[static_cast<std::size_t>(var_of(learnt[best]))])
          best = t;
      std::swap(learnt[1], learnt[best]);
      back_level = level_[static_cast<std::size_t>(var_of(learnt[1]))];
    }

    std::vector<int> levels;
    for (Lit q : learnt) levels.push_back(level_[static_cast<std::size_t>(var_of(q))]);
    std::sort(levels.begin(), levels.end());
    lbd = static_cast<int>(
        std::unique(levels.begin(), levels.end()) - levels.begin());
  }

  std::uint32_t abstract_level(int v) const {
    return 1u << (level_[static_cast<std::size_t>(v)] & 31);
  }

  /// True when `p`'s implication subtree bottoms out in literals already in
  /// the learnt clause (seen_) without leaving its decision levels.  Marks
  /// proven-redundant variables in seen_ so later probes reuse the result.
  bool lit_redundant(Lit p, std::uint32_t abstract_levels,
                     std::vector<int>& marked) {
    minimize_stack_.clear();
    minimize_stack_.push_back(p);
    const std::size_t top = marked.size();
    while (!minimize_stack_.empty()) {
      const Lit x = minimize_stack_.back();
      minimize_stack_.pop_back();
      const Clause& c =
          db_[static_cast<std::size_t>(reason_[static_cast<std::size_t>(
              var_of(x))])];
      for (std::size_t i = 1; i < c.lits.size(); ++i) {
        const Lit q = c.lits[i];
        const int v = var_of(q);
        if (seen_[static_cast<std::size_t>(v)] ||
            level_[static_cast<std::size_t>(v)] == 0)
          continue;
        if (reason_[static_cast<std::size_t>(v)] < 0 ||
            (abstract_level(v) & abstract_levels) == 0) {
          for (std::size_t j = top; j < marked.size(); ++j)
            seen_[static_cast<std::size_t>(marked[j])] = 0;
          marked.resize(top);
          return false;
        }
        seen_[static_cast<std::size_t>(v)] = 1;
        marked.push_back(v);
        minimize_stack_.push_back(q);
      }
    }
    return true;
  }

  void reduce_db() {
    std::vector<int> cands;
    for (int ci = 0; ci < static_cast<int>(db_.size()); ++ci) {
      const Clause& c = db_[static_cast<std::size_t>(ci)];
      if (!c.learned || c.dead || c.lbd <= 2 || c.lits.size() <= 2) continue;
      if (reason_[static_cast<std::size_t>(var_of(c.lits[0]))] == ci) continue;
      cands.push_back(ci);
    }
    std::sort(cands.begin(), cands.end(), [&](int a, int b) {
      const Clause& ca = db_[static_cast<std::size_t>(a)];
      const Clause& cb = db_[static_cast<std::size_t>(b)];
      if (ca.lbd != cb.lbd) return ca.lbd > cb.lbd;  // worst first
      if (ca.act != cb.act) return ca.act < cb.act;
      return a < b;
    });
    std::size_t drop = cands.size() / 2;
    for (std::size_t t = 0; t < drop; ++t) {
      db_[static_cast<std::size_t>(cands[t])].dead = true;
      --learned_count_;
    }
    for (auto& ws : watches_) {
      std::size_t j = 0;
      for (std::size_t i = 0; i < ws.size(); ++i)
        if (!db_[static_cast<std::size_t>(ws[i])].dead) ws[j++] = ws[i];
      ws.resize(j);
    }
  }
};

}  // namespace

SolveOutcome solve_cnf(const Cnf& cnf, double timeout_seconds) {
  if (timeout_seconds <= 0) throw Error("timeout must be positive");
  for (const auto& clause : cnf.clauses)
    for (Lit l : clause)
      if (l == 0 || var_of(l) > cnf.num_vars)
        throw FormatError("literal out of range in CNF");
  Cdcl solver(cnf);
  return solver.run(timeout_seconds);
}

SolveOutcome EmbeddedBackend::solve(const Cnf& cnf, double timeout_seconds) {
  return solve_cnf(cnf, timeout_seconds);
}

std::unique_ptr<SolverBackend> make_backend(const std::string& choice) {
  if (choice.empty() || choice == "embedded")
    return std::make_unique<EmbeddedBackend>();
  return std::make_unique<ExternalBackend>(choice);
}

}  // namespace nfa3
