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

#include "nfa3/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "nfa3/regexp.hpp"

namespace nfa3 {

LabeledCorpus parse_corpus(const std::string& text) {
  LabeledCorpus corpus;
  std::set<std::string> pos_seen, neg_seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = " at line " + std::to_string(lineno);
    if (line.size() < 2 || (line[0] != '+' && line[0] != '-') || line[1] != '\t')
      throw FormatError("expected '+<TAB>word' or '-<TAB>word'" + where);
    std::string word = line.substr(2);
    if (word.empty()) throw EmptyWordError("empty word" + where);
    if (word.find('\t') != std::string::npos)
      throw FormatError("tab inside word" + where);
    bool positive = line[0] == '+';
    if (positive ? neg_seen.count(word) : pos_seen.count(word))
      throw ConflictError("word '" + word + "' labeled both ways" + where);
    auto& seen = positive ? pos_seen : neg_seen;
    if (!seen.insert(word).second) continue;  // duplicate, keep first
    (positive ? corpus.positives : corpus.negatives).push_back(word);
  }
  return corpus;
}

std::string write_corpus(const LabeledCorpus& corpus) {
  std::ostringstream out;
  for (const auto& w : corpus.positives) out << "+\t" << w << "\n";
  for (const auto& w : corpus.negatives) out << "-\t" << w << "\n";
  return out.str();
}

Sample to_sample(const LabeledCorpus& corpus) {
  std::string chars;
  for (const auto* side : {&corpus.positives, &corpus.negatives})
    for (const auto& w : *side) chars += w;
  Sample sample;
  sample.alphabet = Alphabet(std::move(chars));
  for (const auto& w : corpus.positives)
    sample.positives.push_back(intern(w, sample.alphabet));
  for (const auto& w : corpus.negatives)
    sample.negatives.push_back(intern(w, sample.alphabet));
  sample.check();
  return sample;
}

std::pair<LabeledCorpus, LabeledCorpus> split_corpus(
    const LabeledCorpus& corpus, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw DegenerateSplit("fraction must lie strictly between 0 and 1");
  auto take = [&](const std::vector<std::string>& words) {
    // The small epsilon keeps e.g. 0.3 * 10 (which the FPU sees as
    // 2.9999999999999996) from losing a word.
    return static_cast<std::size_t>(
        std::floor(fraction * static_cast<double>(words.size()) + 1e-9));
  };
  std::size_t np = take(corpus.positives), nn = take(corpus.negatives);
  if (np == 0 || nn == 0 || np == corpus.positives.size() ||
      nn == corpus.negatives.size())
    throw DegenerateSplit("split leaves an empty train or test class");
  LabeledCorpus train, test;
  train.positives.assign(corpus.positives.begin(),
                         corpus.positives.begin() + static_cast<long>(np));
  test.positives.assign(corpus.positives.begin() + static_cast<long>(np),
                        corpus.positives.end());
  train.negatives.assign(corpus.negatives.begin(),
                         corpus.negatives.begin() + static_cast<long>(nn));
  test.negatives.assign(corpus.negatives.begin() + static_cast<long>(nn),
                        corpus.negatives.end());
  return {std::move(train), std::move(test)};
}

std::pair<Sample, Sample> split_train_test(const LabeledCorpus& corpus,
                                           double fraction) {
  auto [train, test] = split_corpus(corpus, fraction);
  return {to_sample(train), to_sample(test)};
}

LabeledCorpus generate_regexp_benchmark(const RegexpBenchmarkSpec& spec) {
  if (spec.total < 2 || spec.total % 2 != 0)
    throw FormatError("total must be even and at least 2");
  if (spec.min_len < 1 || spec.max_len < spec.min_len)
    throw FormatError("bad length range");
  Regexp re(spec.pattern);
  Rng rng(spec.seed);

  const std::size_t want = static_cast<std::size_t>(spec.total) / 2;
  std::vector<unsigned __int128> cum;  // words with length <= l (offsets)
  unsigned __int128 language_size = 0;
  for (int l = spec.min_len; l <= spec.max_len; ++l) {
    cum.push_back(language_size);
    language_size += re.count_words(l);
  }
  if (language_size < want)
    throw LanguageTooSmall("language has fewer than " + std::to_string(want) +
                           " words in the length range");

  // Floyd's algorithm: `want` distinct indices into the language.
  std::set<unsigned __int128> chosen;
  for (unsigned __int128 i = language_size - want; i < language_size; ++i) {
    unsigned __int128 r = rng.below128(i + 1);
    if (!chosen.insert(r).second) chosen.insert(i);
  }

  std::vector<std::string> positives;
  for (unsigned __int128 idx : chosen) {
    std::size_t bucket = 0;
    while (bucket + 1 < cum.size() && cum[bucket + 1] <= idx) ++bucket;
    positives.push_back(re.word_at(spec.min_len + static_cast<int>(bucket),
                                   idx - cum[bucket]));
  }
  rng.shuffle(positives);

  std::set<std::string> used(positives.begin(), positives.end());
  std::vector<std::string> negatives;
  for (std::size_t i = 0; i < positives.size(); ++i) {
    std::string found;
    bool collision_blocked = false;
    // Shuffle the paired positive's letters; if a thousand tries all land in
    // the language (or collide), recycle later positives' letters instead.
    for (std::size_t probe = 0; probe < positives.size() && found.empty();
         ++probe) {
      std::vector<char> letters(positives[(i + probe) % positives.size()].begin(),
                                positives[(i + probe) % positives.size()].end());
      for (int attempt = 0; attempt < 1000; ++attempt) {
        rng.shuffle(letters);
        std::string cand(letters.begin(), letters.end());
        if (re.matches(cand)) continue;
        if (used.count(cand)) {
          collision_blocked = true;
          continue;
        }
        found = cand;
        break;
      }
    }
    if (found.empty()) {
      // No arrangement of any positive's letters ever left the language:
      // the bounded language cannot supply anagram negatives at all.  If
      // out-of-language arrangements existed but were already taken, the
      // distinctness requirement is what starved us.
      if (collision_blocked)
        throw NegativeGenerationStalled(
            "could not derive a distinct negative for positive #" +
            std::to_string(i + 1));
      throw LanguageTooSmall(
          "no letter arrangement of the sampled words leaves the language "
          "(after bounded retries)");
    }
    used.insert(found);
    negatives.push_back(found);
  }

  LabeledCorpus corpus;
  corpus.positives = std::move(positives);
  corpus.negatives = std::move(negatives);
  return corpus;
}

}  // namespace nfa3
