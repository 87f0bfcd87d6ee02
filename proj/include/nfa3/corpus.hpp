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

#ifndef NFA3_CORPUS_HPP_
#define NFA3_CORPUS_HPP_

#include <string>
#include <utility>
#include <vector>

#include "nfa3/automaton.hpp"

namespace nfa3 {

/// Labeled word list in file order (duplicates already removed).
struct LabeledCorpus {
  std::vector<std::string> positives;
  std::vector<std::string> negatives;

  std::size_t size() const { return positives.size() + negatives.size(); }
};

/// Parses the tab-separated corpus format: one `+<TAB>word` or `-<TAB>word`
/// per line.  Duplicate (label, word) pairs collapse to the first
/// occurrence; a word labeled both ways is a ConflictError.
LabeledCorpus parse_corpus(const std::string& text);

std::string write_corpus(const LabeledCorpus& corpus);

/// Interns a corpus over the alphabet of its own words.
Sample to_sample(const LabeledCorpus& corpus);

/// Per-class prefix split: the first floor(fraction*n) words of each class
/// form the training part.  Throws DegenerateSplit if any of the four parts
/// ends up empty.
std::pair<LabeledCorpus, LabeledCorpus> split_corpus(
    const LabeledCorpus& corpus, double fraction);

/// Same split, returning interned samples (each over its own alphabet).
std::pair<Sample, Sample> split_train_test(const LabeledCorpus& corpus,
                                           double fraction);

/// Benchmark request: sample `total/2` distinct words uniformly from the
/// words of the regular language with length in [min_len, max_len], and
/// derive one negative per positive by shuffling its letters (rejecting
/// shuffles that still match).  Fully determined by `seed`.
struct RegexpBenchmarkSpec {
  std::string pattern;
  int total = 200;            ///< positives + negatives; must be even
  int min_len = 1;
  int max_len = 15;
  std::uint64_t seed = 0;
};

LabeledCorpus generate_regexp_benchmark(const RegexpBenchmarkSpec& spec);

}  // namespace nfa3

#endif  // NFA3_CORPUS_HPP_
