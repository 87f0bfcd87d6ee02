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

// Shared brute-force oracles and generators.  Everything here is written
// for obviousness, not speed: these are the independent references the
// production code is judged against.

#ifndef NFA3_TESTS_TEST_SUPPORT_HPP_
#define NFA3_TESTS_TEST_SUPPORT_HPP_

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "nfa3/automaton.hpp"

namespace nfa3::testing {

/// Calls `visit` with every k-state 3-sort automaton over `alphabet`:
/// 3^k sort assignments times 2^(n k^2) transition sets.  Stops and returns
/// true as soon as visit returns true.
template <class Visit>
bool enumerate_3nfas(int k, const Alphabet& alphabet, Visit&& visit) {
  const int n = alphabet.size();
  const int arc_bits = n * k * k;
  std::vector<int> sorts(static_cast<std::size_t>(k), 0);
  for (;;) {
    for (std::uint64_t mask = 0; mask < (1ULL << arc_bits); ++mask) {
      Nfa3 nfa(k, alphabet);
      for (State q = 0; q < k; ++q) {
        if (sorts[static_cast<std::size_t>(q)] == 1) nfa.set_accepting(q);
        if (sorts[static_cast<std::size_t>(q)] == 2) nfa.set_rejecting(q);
      }
      int bit = 0;
      for (Symbol s = 0; s < n; ++s)
        for (State i = 0; i < k; ++i)
          for (State j = 0; j < k; ++j, ++bit)
            if ((mask >> bit) & 1) nfa.add_transition(i, s, j);
      if (visit(nfa)) return true;
    }
    std::size_t pos = 0;
    while (pos < sorts.size() && ++sorts[pos] == 3) sorts[pos++] = 0;
    if (pos == sorts.size()) break;
  }
  return false;
}

/// True iff some k-state 3-sort automaton is consistent with the sample.
inline bool oracle_feasible(const Sample& sample, int k) {
  return enumerate_3nfas(k, sample.alphabet, [&](const Nfa3& nfa) {
    return is_consistent(nfa, sample);
  });
}

/// Smallest k in [1, k_cap] admitting a consistent automaton; -1 if none.
inline int oracle_min_k(const Sample& sample, int k_cap) {
  for (int k = 1; k <= k_cap; ++k) {
    if (oracle_feasible(sample, k)) return k;
  }
  return -1;
}

/// Random sample: 1..max_words distinct nonempty words (length 1..max_len)
/// over the first num_syms letters of "abc", each tossed into a random
/// class.  Never empty overall; single classes may be.
inline Sample random_sample(Rng& rng, int num_syms, int max_len,
                            int max_words) {
  Sample sample;
  sample.alphabet = Alphabet(std::string("abc").substr(
      0, static_cast<std::size_t>(num_syms)));
  std::set<Word> seen;
  const int target = 1 + static_cast<int>(rng.below(
                             static_cast<std::uint64_t>(max_words)));
  for (int i = 0; i < target; ++i) {
    Word w;
    const int len = 1 + static_cast<int>(rng.below(
                            static_cast<std::uint64_t>(max_len)));
    for (int j = 0; j < len; ++j) {
      w.syms.push_back(static_cast<Symbol>(
          rng.below(static_cast<std::uint64_t>(num_syms))));
    }
    if (!seen.insert(w).second) continue;
    (rng.below(2) == 0 ? sample.positives : sample.negatives)
        .push_back(std::move(w));
  }
  if (sample.size() == 0) {
    sample.positives.push_back(Word{{0}});
  }
  return sample;
}

/// Random automaton: each of the n*k*k arcs is present with probability
/// roughly arc_percent/100; sorts uniform over the three kinds.
inline Nfa3 random_nfa(Rng& rng, int k, const Alphabet& alphabet,
                       int arc_percent) {
  Nfa3 nfa(k, alphabet);
  for (State q = 0; q < k; ++q) {
    switch (rng.below(3)) {
      case 1: nfa.set_accepting(q); break;
      case 2: nfa.set_rejecting(q); break;
      default: break;
    }
  }
  for (Symbol s = 0; s < alphabet.size(); ++s)
    for (State i = 0; i < k; ++i)
      for (State j = 0; j < k; ++j)
        if (rng.below(100) < static_cast<std::uint64_t>(arc_percent))
          nfa.add_transition(i, s, j);
  return nfa;
}

/// Plain recursive run enumeration, no pruning, no budget.
inline void naive_paths_rec(const Nfa3& nfa, const Word& w, std::size_t i,
                            State q, PhysicalPath& cur,
                            std::vector<PhysicalPath>& out) {
  if (i == w.size()) {
    out.push_back(cur);
    return;
  }
  for (State to : nfa.targets(q, w.syms[i])) {
    cur.push_back({q, w.syms[i], to});
    naive_paths_rec(nfa, w, i + 1, to, cur, out);
    cur.pop_back();
  }
}

inline std::vector<PhysicalPath> naive_paths(const Nfa3& nfa, const Word& w) {
  std::vector<PhysicalPath> out;
  PhysicalPath cur;
  naive_paths_rec(nfa, w, 0, 0, cur, out);
  return out;
}

inline State path_end(const PhysicalPath& path) {
  return path.empty() ? 0 : path.back().to;
}

inline Verdict naive_verdict(const Nfa3& nfa, const Word& w) {
  bool acc = false, rej = false, any = false;
  for (const PhysicalPath& p : naive_paths(nfa, w)) {
    any = true;
    acc = acc || nfa.is_accepting(path_end(p));
    rej = rej || nfa.is_rejecting(path_end(p));
  }
  if (acc && rej) return Verdict::Both;
  if (acc) return Verdict::Accepted;
  if (rej) return Verdict::Rejected;
  (void)any;
  return Verdict::Inconclusive;
}

/// Word literal helper: "abba" over `alphabet` -> Word.
inline Word w_(const std::string& text, const Alphabet& alphabet) {
  return intern(text, alphabet);
}

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

/// Runs a shell command, capturing combined output.
inline CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (!pipe) throw Error("popen failed for: " + command);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) {
    result.output.append(buf, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

/// Self-cleaning scratch directory.
class TempDir {
 public:
  TempDir() {
    std::string tmpl =
        (std::filesystem::temp_directory_path() / "nfa3-test-XXXXXX").string();
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    if (!mkdtemp(buf.data())) throw Error("mkdtemp failed");
    path_ = buf.data();
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }

  const std::string& path() const { return path_; }
  std::string file(const std::string& name) const {
    return path_ + "/" + name;
  }

 private:
  std::string path_;
};

}  // namespace nfa3::testing

#endif  // NFA3_TESTS_TEST_SUPPORT_HPP_
