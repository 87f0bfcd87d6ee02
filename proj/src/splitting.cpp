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

#include "nfa3/splitting.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace nfa3 {

namespace {

std::vector<const Word*> all_words(const Sample& sample) {
  std::vector<const Word*> out;
  for (const Word& w : sample.positives) out.push_back(&w);
  for (const Word& w : sample.negatives) out.push_back(&w);
  return out;
}

Splitting make_splitting(const Sample& sample, std::size_t n_pos,
                         const std::vector<std::size_t>& cuts) {
  Splitting s;
  s.pos_cut.assign(cuts.begin(), cuts.begin() + static_cast<long>(n_pos));
  s.neg_cut.assign(cuts.begin() + static_cast<long>(n_pos), cuts.end());
  (void)sample;
  return s;
}

bool has_suffix(const Word& w, const Word& v) {
  if (v.size() > w.size()) return false;
  return std::equal(v.syms.begin(), v.syms.end(),
                    w.syms.end() - static_cast<long>(v.size()));
}

bool has_prefix(const Word& w, const Word& u) {
  if (u.size() > w.size()) return false;
  return std::equal(u.syms.begin(), u.syms.end(), w.syms.begin());
}

// Greedy cover shared by the best-suffix and best-prefix models; `suffix`
// selects which end of the words the parts come from.
Splitting greedy_cover(const Sample& sample, bool suffix) {
  auto words = all_words(sample);
  std::map<Word, std::size_t> occ;  // candidate part -> #words containing it
  for (const Word* w : words)
    for (std::size_t cut = 1; cut <= w->size(); ++cut) {
      Word part;
      if (suffix)
        part.syms.assign(w->syms.end() - static_cast<long>(cut), w->syms.end());
      else
        part.syms.assign(w->syms.begin(), w->syms.begin() + static_cast<long>(cut));
      occ[part]++;
    }

  std::vector<const Word*> order;
  for (const auto& [part, n] : occ) order.push_back(&part);
  std::stable_sort(order.begin(), order.end(),
                   [&](const Word* a, const Word* b) {
                     std::uint64_t ca = a->size() * occ.at(*a);
                     std::uint64_t cb = b->size() * occ.at(*b);
                     if (ca != cb) return ca > cb;
                     if (a->size() != b->size()) return a->size() > b->size();
                     return *a < *b;
                   });

  std::vector<std::size_t> cuts(words.size(), 0);
  std::vector<char> covered(words.size(), 0);
  std::size_t remaining = words.size();
  for (const Word* part : order) {
    if (remaining == 0) break;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (covered[i]) continue;
      bool hit = suffix ? has_suffix(*words[i], *part)
                        : has_prefix(*words[i], *part);
      if (!hit) continue;
      covered[i] = 1;
      --remaining;
      cuts[i] = suffix ? words[i]->size() - part->size() : part->size();
    }
  }
  return make_splitting(sample, sample.positives.size(), cuts);
}

}  // namespace

Splitting split_all_prefix(const Sample& sample) {
  Splitting s;
  for (const Word& w : sample.positives) s.pos_cut.push_back(w.size());
  for (const Word& w : sample.negatives) s.neg_cut.push_back(w.size());
  return s;
}

Splitting split_all_suffix(const Sample& sample) {
  Splitting s;
  s.pos_cut.assign(sample.positives.size(), 0);
  s.neg_cut.assign(sample.negatives.size(), 0);
  return s;
}

Splitting split_best_suffix(const Sample& sample) {
  return greedy_cover(sample, /*suffix=*/true);
}

Splitting split_best_prefix(const Sample& sample) {
  return greedy_cover(sample, /*suffix=*/false);
}

std::uint64_t splitting_fitness(const Sample& sample, const Splitting& s,
                                int k) {
  std::set<Word> prefixes, suffixes;
  auto add = [&](const Word& w, std::size_t cut) {
    for (std::size_t t = 1; t <= cut; ++t) {
      Word p;
      p.syms.assign(w.syms.begin(), w.syms.begin() + static_cast<long>(t));
      prefixes.insert(std::move(p));
    }
    for (std::size_t t = cut; t < w.size(); ++t) {
      Word v;
      v.syms.assign(w.syms.begin() + static_cast<long>(t), w.syms.end());
      suffixes.insert(std::move(v));
    }
  };
  for (std::size_t i = 0; i < sample.positives.size(); ++i)
    add(sample.positives[i], s.pos_cut.at(i));
  for (std::size_t i = 0; i < sample.negatives.size(); ++i)
    add(sample.negatives[i], s.neg_cut.at(i));
  return prefixes.size() +
         static_cast<std::uint64_t>(k) * suffixes.size();
}

namespace {

struct FlatSplit {
  std::vector<std::size_t> cuts;  // positives then negatives
};

Splitting unflatten(const Sample& sample, const FlatSplit& f) {
  return make_splitting(sample, sample.positives.size(), f.cuts);
}

FlatSplit flatten(const Splitting& s) {
  FlatSplit f;
  f.cuts = s.pos_cut;
  f.cuts.insert(f.cuts.end(), s.neg_cut.begin(), s.neg_cut.end());
  return f;
}

// Round-robin first-improvement descent over single-cut +-1 moves.
std::uint64_t descend(const Sample& sample, FlatSplit& f, int k,
                      const std::vector<const Word*>& words) {
  std::uint64_t cur = splitting_fitness(sample, unflatten(sample, f), k);
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (int delta : {-1, +1}) {
        long cut = static_cast<long>(f.cuts[i]) + delta;
        if (cut < 0 || cut > static_cast<long>(words[i]->size())) continue;
        std::size_t old = f.cuts[i];
        f.cuts[i] = static_cast<std::size_t>(cut);
        std::uint64_t fit = splitting_fitness(sample, unflatten(sample, f), k);
        if (fit < cur) {
          cur = fit;
          improved = true;
        } else {
          f.cuts[i] = old;
        }
      }
    }
  }
  return cur;
}

}  // namespace

Splitting ils_optimize(const Sample& sample, int k, const IlsConfig& config) {
  auto words = all_words(sample);
  Rng rng(config.seed);

  FlatSplit best;
  switch (config.start) {
    case IlsStart::Random:
      for (const Word* w : words)
        best.cuts.push_back(
            static_cast<std::size_t>(rng.below(w->size() + 1)));
      break;
    case IlsStart::BestPrefix:
      best = flatten(split_best_prefix(sample));
      break;
    case IlsStart::BestSuffix:
      best = flatten(split_best_suffix(sample));
      break;
  }

  std::uint64_t best_fit = descend(sample, best, k, words);
  const std::size_t kick = (words.size() + 9) / 10;  // ceil(|S| / 10)
  for (int iter = 0; iter < config.max_iterations; ++iter) {
    FlatSplit cand = best;
    std::set<std::size_t> touched;
    while (touched.size() < kick && touched.size() < words.size())
      touched.insert(static_cast<std::size_t>(rng.below(words.size())));
    for (std::size_t i : touched)
      cand.cuts[i] = static_cast<std::size_t>(rng.below(words[i]->size() + 1));
    std::uint64_t fit = descend(sample, cand, k, words);
    if (fit <= best_fit) {  // plateau walking
      best = std::move(cand);
      best_fit = fit;
    }
  }
  return unflatten(sample, best);
}

}  // namespace nfa3
