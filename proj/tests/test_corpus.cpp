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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <regex>

#include "nfa3/corpus.hpp"
#include "test_support.hpp"

using namespace nfa3;
using namespace nfa3::testing;

namespace {

// Distinct synthetic words: class letter followed by a fixed-width binary
// spelling over {a, b}; guarantees disjoint classes of any needed size.
std::string coded_word(char cls, int i) {
  std::string w(1, cls);
  for (int bit = 8; bit >= 0; --bit) w += (i >> bit) & 1 ? 'b' : 'a';
  return w;
}

LabeledCorpus sized_corpus(int positives, int negatives) {
  LabeledCorpus c;
  for (int i = 0; i < positives; ++i) c.positives.push_back(coded_word('a', i));
  for (int i = 0; i < negatives; ++i) c.negatives.push_back(coded_word('b', i));
  return c;
}

}  // namespace

TEST_CASE("corpus parsing basics") {
  LabeledCorpus c = parse_corpus("+\tab\n-\tbb\n");
  CHECK(c.positives == std::vector<std::string>{"ab"});
  CHECK(c.negatives == std::vector<std::string>{"bb"});

  Sample s = to_sample(c);
  CHECK(s.alphabet.chars() == "ab");
  CHECK(s.positives.size() == 1);
  CHECK(s.negatives.size() == 1);
}

TEST_CASE("corpus parsing dedups and keeps file order") {
  LabeledCorpus c = parse_corpus("+\tzz\n+\tab\n+\tab\n-\tba\n\n+\tq\n");
  CHECK(c.positives == std::vector<std::string>{"zz", "ab", "q"});
  CHECK(c.negatives == std::vector<std::string>{"ba"});
}

TEST_CASE("corpus parsing errors") {
  CHECK_THROWS_AS(parse_corpus("+\tab\n-\tab\n"), ConflictError);
  CHECK_THROWS_AS(parse_corpus("-\tab\n+\tab\n"), ConflictError);
  CHECK_THROWS_AS(parse_corpus("+\t\n"), EmptyWordError);
  CHECK_THROWS_AS(parse_corpus("x\tab\n"), FormatError);
  CHECK_THROWS_AS(parse_corpus("+ab\n"), FormatError);
  CHECK_THROWS_AS(parse_corpus("+\ta\tb\n"), FormatError);
  CHECK_THROWS_WITH_AS(parse_corpus("+\tab\n?\tcd\n"),
                       doctest::Contains("line 2"), FormatError);
}

TEST_CASE("corpus windows line endings and round-trip") {
  LabeledCorpus c = parse_corpus("+\tab\r\n-\tba\r\n");
  CHECK(c.positives == std::vector<std::string>{"ab"});
  const std::string text = write_corpus(c);
  CHECK(text == "+\tab\n-\tba\n");
  CHECK(write_corpus(parse_corpus(text)) == text);
}

TEST_CASE("train split takes leading words per class") {
  LabeledCorpus c = sized_corpus(4, 4);
  auto [train, test] = split_corpus(c, 0.5);
  CHECK(train.positives ==
        std::vector<std::string>{coded_word('a', 0), coded_word('a', 1)});
  CHECK(test.positives ==
        std::vector<std::string>{coded_word('a', 2), coded_word('a', 3)});
  CHECK(train.negatives.size() == 2);
  CHECK(test.negatives.size() == 2);
}

TEST_CASE("split sizes reproduce the published benchmark table") {
  struct Row {
    int pos, neg;
    int expect[3][2];  // at 10%, 30%, 50%
  };
  const Row rows[] = {
      {79, 121, {{7, 12}, {23, 36}, {39, 60}}},  // amyloid hexapeptides
      {79, 36, {{7, 3}, {23, 10}, {39, 18}}},
      {204, 66, {{20, 6}, {61, 19}, {102, 33}}},
      {32, 15, {{3, 1}, {9, 4}, {16, 7}}},
      {92, 22, {{9, 2}, {27, 6}, {46, 11}}},
  };
  const double fractions[3] = {0.10, 0.30, 0.50};
  for (const Row& row : rows) {
    LabeledCorpus c = sized_corpus(row.pos, row.neg);
    for (int f = 0; f < 3; ++f) {
      auto [train, test] = split_corpus(c, fractions[f]);
      CHECK(static_cast<int>(train.positives.size()) == row.expect[f][0]);
      CHECK(static_cast<int>(train.negatives.size()) == row.expect[f][1]);
      CHECK(train.positives.size() + test.positives.size() ==
            static_cast<std::size_t>(row.pos));
      CHECK(train.negatives.size() + test.negatives.size() ==
            static_cast<std::size_t>(row.neg));
    }
  }
}

TEST_CASE("float dust cannot shave a word off a split") {
  // 0.3 * 10 is 2.9999999999999996 in binary; the split must still take 3.
  LabeledCorpus c = sized_corpus(10, 10);
  auto [train, test] = split_corpus(c, 0.3);
  CHECK(train.positives.size() == 3);
  CHECK(train.negatives.size() == 3);
}

TEST_CASE("degenerate splits are rejected") {
  CHECK_THROWS_AS(split_corpus(sized_corpus(2, 2), 0.2), DegenerateSplit);
  CHECK_THROWS_AS(split_corpus(sized_corpus(1, 8), 0.5), DegenerateSplit);
  CHECK_THROWS_AS(split_corpus(sized_corpus(4, 4), 1.0), DegenerateSplit);
  CHECK_THROWS_AS(split_corpus(sized_corpus(4, 4), 0.0), DegenerateSplit);
  auto [train, test] = split_corpus(sized_corpus(2, 2), 0.5);
  CHECK(train.positives.size() == 1);
  CHECK(test.negatives.size() == 1);
}

TEST_CASE("split_train_test interns both halves") {
  LabeledCorpus c = sized_corpus(4, 4);
  auto [train, test] = split_train_test(c, 0.5);
  CHECK(train.size() == 4);
  CHECK(test.size() == 4);
  CHECK_NOTHROW(train.check());
  CHECK_NOTHROW(test.check());
}

TEST_CASE("generated benchmark satisfies all contract properties") {
  RegexpBenchmarkSpec spec;
  spec.pattern = "(0|11)(001|000|10)*0";
  spec.total = 60;
  spec.min_len = 1;
  spec.max_len = 12;
  spec.seed = 11;
  LabeledCorpus c = generate_regexp_benchmark(spec);

  REQUIRE(c.positives.size() == 30);
  REQUIRE(c.negatives.size() == 30);

  const std::regex oracle("(0|11)(001|000|10)*0");
  std::set<std::string> all;
  std::multiset<std::string> pos_anagrams;
  auto sorted_letters = [](std::string w) {
    std::sort(w.begin(), w.end());
    return w;
  };
  for (const std::string& w : c.positives) {
    CHECK(std::regex_match(w, oracle));
    CHECK(w.size() >= 1);
    CHECK(w.size() <= 12);
    CHECK(all.insert(w).second);
    pos_anagrams.insert(sorted_letters(w));
  }
  for (const std::string& w : c.negatives) {
    CHECK(!std::regex_match(w, oracle));
    CHECK(all.insert(w).second);
    // every negative reshuffles some positive's letters
    auto it = pos_anagrams.find(sorted_letters(w));
    CHECK(it != pos_anagrams.end());
  }
}

TEST_CASE("generation is a pure function of the spec") {
  RegexpBenchmarkSpec spec;
  spec.pattern = "a(b|c)*";
  spec.total = 40;
  spec.min_len = 1;
  spec.max_len = 10;
  spec.seed = 3;
  LabeledCorpus a = generate_regexp_benchmark(spec);
  LabeledCorpus b = generate_regexp_benchmark(spec);
  CHECK(write_corpus(a) == write_corpus(b));

  spec.seed = 4;
  LabeledCorpus d = generate_regexp_benchmark(spec);
  CHECK(write_corpus(a) != write_corpus(d));
}

TEST_CASE("generation failure modes") {
  RegexpBenchmarkSpec spec;
  spec.pattern = "a";
  spec.total = 2;
  spec.min_len = 1;
  spec.max_len = 1;
  // The single-word language {"a"} has no out-of-language anagram.
  CHECK_THROWS_AS(generate_regexp_benchmark(spec), LanguageTooSmall);

  spec.pattern = "ab|ba";
  spec.total = 6;
  spec.max_len = 2;
  CHECK_THROWS_AS(generate_regexp_benchmark(spec), LanguageTooSmall);

  spec.total = 3;
  CHECK_THROWS_AS(generate_regexp_benchmark(spec), FormatError);
  spec.total = 4;
  spec.min_len = 3;
  spec.max_len = 2;
  CHECK_THROWS_AS(generate_regexp_benchmark(spec), FormatError);
}

TEST_CASE("negative generation distinguishes stall from impossibility") {
  // Language {ab, ba} over two distinct letters: every anagram of a
  // positive is in the language, so negatives cannot exist.
  RegexpBenchmarkSpec spec;
  spec.pattern = "ab|ba";
  spec.total = 4;
  spec.min_len = 2;
  spec.max_len = 2;
  spec.seed = 1;
  CHECK_THROWS_AS(generate_regexp_benchmark(spec), LanguageTooSmall);

  // Language {ab}: the lone anagram "ba" is a fine negative for the first
  // positive, but a second distinct negative cannot exist.
  RegexpBenchmarkSpec stall;
  stall.pattern = "ab";
  stall.total = 2;
  stall.min_len = 2;
  stall.max_len = 2;
  LabeledCorpus ok = generate_regexp_benchmark(stall);
  CHECK(ok.negatives == std::vector<std::string>{"ba"});
}
