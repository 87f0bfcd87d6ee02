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

#include "nfa3/regexp.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace nfa3 {

namespace {

struct Ast {
  enum Kind { Epsilon, Chars, Concat, Alt, Star, Plus, Opt } kind = Epsilon;
  std::set<char> chars;
  std::vector<Ast> kids;
};

class Parser {
 public:
  explicit Parser(const std::string& p) : pat_(p) {}

  Ast parse() {
    Ast root = alternation();
    if (pos_ != pat_.size())
      throw FormatError("unexpected '" + std::string(1, pat_[pos_]) +
                        "' in pattern");
    return root;
  }

 private:
  const std::string& pat_;
  std::size_t pos_ = 0;

  bool done() const { return pos_ >= pat_.size(); }
  char peek() const { return pat_[pos_]; }

  Ast alternation() {
    Ast node;
    node.kind = Ast::Alt;
    node.kids.push_back(sequence());
    while (!done() && peek() == '|') {
      ++pos_;
      node.kids.push_back(sequence());
    }
    if (node.kids.size() == 1) return node.kids[0];
    return node;
  }

  Ast sequence() {
    Ast node;
    node.kind = Ast::Concat;
    while (!done() && peek() != '|' && peek() != ')')
      node.kids.push_back(repetition());
    if (node.kids.empty()) return Ast{};  // epsilon
    if (node.kids.size() == 1) return node.kids[0];
    return node;
  }

  Ast repetition() {
    Ast node = atom();
    while (!done() && (peek() == '*' || peek() == '+' || peek() == '?')) {
      Ast wrap;
      wrap.kind = peek() == '*' ? Ast::Star : peek() == '+' ? Ast::Plus : Ast::Opt;
      ++pos_;
      wrap.kids.push_back(std::move(node));
      node = std::move(wrap);
    }
    return node;
  }

  Ast atom() {
    if (done()) throw FormatError("pattern ends where an atom is expected");
    char c = pat_[pos_];
    if (c == '(') {
      ++pos_;
      Ast inner = alternation();
      if (done() || peek() != ')') throw FormatError("missing ')' in pattern");
      ++pos_;
      return inner;
    }
    if (c == '[') return char_class();
    if (c == '*' || c == '+' || c == '?' || c == ')')
      throw FormatError("misplaced '" + std::string(1, c) + "' in pattern");
    if (c == '\\') {
      ++pos_;
      if (done()) throw FormatError("dangling escape in pattern");
      c = pat_[pos_];
    }
    ++pos_;
    Ast node;
    node.kind = Ast::Chars;
    node.chars.insert(c);
    return node;
  }

  Ast char_class() {
    ++pos_;  // '['
    Ast node;
    node.kind = Ast::Chars;
    bool first = true;
    while (!done() && peek() != ']') {
      char lo = peek();
      if (lo == '\\') {
        ++pos_;
        if (done()) throw FormatError("dangling escape in class");
        lo = peek();
      }
      ++pos_;
      if (!done() && peek() == '-' && pos_ + 1 < pat_.size() &&
          pat_[pos_ + 1] != ']') {
        ++pos_;
        char hi = peek();
        if (hi == '\\') {
          ++pos_;
          if (done()) throw FormatError("dangling escape in class");
          hi = peek();
        }
        ++pos_;
        if (hi < lo) throw FormatError("reversed range in class");
        for (char x = lo;; ++x) {
          node.chars.insert(x);
          if (x == hi) break;
        }
      } else {
        node.chars.insert(lo);
      }
      first = false;
    }
    if (done()) throw FormatError("missing ']' in pattern");
    ++pos_;  // ']'
    if (first) throw FormatError("empty character class");
    return node;
  }
};

// Thompson construction with epsilon edges; fragments expose one in-state
// and one out-state.
struct Builder {
  struct Edge {
    int to;
    int sym;  // -1 for epsilon
  };
  std::vector<std::vector<Edge>> out;
  const Alphabet& alphabet;

  explicit Builder(const Alphabet& a) : alphabet(a) {}

  int fresh() {
    out.emplace_back();
    return static_cast<int>(out.size()) - 1;
  }

  struct Frag {
    int in, fin;
  };

  Frag build(const Ast& node) {
    switch (node.kind) {
      case Ast::Epsilon: {
        int s = fresh();
        return {s, s};
      }
      case Ast::Chars: {
        int s = fresh(), t = fresh();
        for (char c : node.chars)
          out[static_cast<std::size_t>(s)].push_back(
              {t, *alphabet.index(c)});
        return {s, t};
      }
      case Ast::Concat: {
        Frag cur = build(node.kids[0]);
        for (std::size_t i = 1; i < node.kids.size(); ++i) {
          Frag nxt = build(node.kids[i]);
          out[static_cast<std::size_t>(cur.fin)].push_back({nxt.in, -1});
          cur.fin = nxt.fin;
        }
        return cur;
      }
      case Ast::Alt: {
        int s = fresh(), t = fresh();
        for (const Ast& kid : node.kids) {
          Frag f = build(kid);
          out[static_cast<std::size_t>(s)].push_back({f.in, -1});
          out[static_cast<std::size_t>(f.fin)].push_back({t, -1});
        }
        return {s, t};
      }
      case Ast::Star: {
        Frag f = build(node.kids[0]);
        int s = fresh(), t = fresh();
        out[static_cast<std::size_t>(s)].push_back({f.in, -1});
        out[static_cast<std::size_t>(s)].push_back({t, -1});
        out[static_cast<std::size_t>(f.fin)].push_back({f.in, -1});
        out[static_cast<std::size_t>(f.fin)].push_back({t, -1});
        return {s, t};
      }
      case Ast::Plus: {
        Frag f = build(node.kids[0]);
        int t = fresh();
        out[static_cast<std::size_t>(f.fin)].push_back({f.in, -1});
        out[static_cast<std::size_t>(f.fin)].push_back({t, -1});
        return {f.in, t};
      }
      case Ast::Opt: {
        Frag f = build(node.kids[0]);
        int s = fresh(), t = fresh();
        out[static_cast<std::size_t>(s)].push_back({f.in, -1});
        out[static_cast<std::size_t>(s)].push_back({t, -1});
        out[static_cast<std::size_t>(f.fin)].push_back({t, -1});
        return {s, t};
      }
    }
    throw Error("unreachable");
  }
};

void collect_chars(const Ast& node, std::string& chars) {
  for (char c : node.chars) chars.push_back(c);
  for (const Ast& kid : node.kids) collect_chars(kid, chars);
}

std::vector<int> eps_closure(const Builder& b, std::vector<int> states) {
  std::set<int> seen(states.begin(), states.end());
  while (!states.empty()) {
    int q = states.back();
    states.pop_back();
    for (const auto& e : b.out[static_cast<std::size_t>(q)])
      if (e.sym < 0 && seen.insert(e.to).second) states.push_back(e.to);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

Regexp::Regexp(const std::string& pattern) {
  Ast root = Parser(pattern).parse();
  std::string chars;
  collect_chars(root, chars);
  alphabet_ = Alphabet(std::move(chars));

  Builder b(alphabet_);
  auto frag = b.build(root);

  // Subset construction.
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> work;
  auto intern_set = [&](std::vector<int> set) {
    auto [it, fresh] = ids.emplace(std::move(set), static_cast<int>(ids.size()));
    if (fresh) {
      work.push_back(it->first);
      delta_.emplace_back(static_cast<std::size_t>(alphabet_.size()), -1);
      accepting_.push_back(0);
    }
    return it->second;
  };
  int start = intern_set(eps_closure(b, {frag.in}));
  (void)start;
  for (std::size_t i = 0; i < work.size(); ++i) {
    std::vector<int> cur = work[i];
    for (int q : cur)
      if (q == frag.fin) accepting_[i] = 1;
    for (Symbol s = 0; s < alphabet_.size(); ++s) {
      std::vector<int> next;
      for (int q : cur)
        for (const auto& e : b.out[static_cast<std::size_t>(q)])
          if (e.sym == s) next.push_back(e.to);
      if (next.empty()) continue;
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      delta_[i][static_cast<std::size_t>(s)] =
          intern_set(eps_closure(b, std::move(next)));
    }
  }
  num_states_ = static_cast<int>(delta_.size());
}

bool Regexp::matches(const std::string& word) const {
  int q = 0;
  for (char c : word) {
    auto s = alphabet_.index(c);
    if (!s) return false;
    q = delta_[static_cast<std::size_t>(q)][static_cast<std::size_t>(*s)];
    if (q < 0) return false;
  }
  return accepting_[static_cast<std::size_t>(q)] != 0;
}

void Regexp::ensure_counts(int len) const {
  if (static_cast<int>(counts_.size()) > len) return;
  if (counts_.empty()) {
    counts_.emplace_back(accepting_.begin(), accepting_.end());
  }
  while (static_cast<int>(counts_.size()) <= len) {
    const auto& prev = counts_.back();
    std::vector<unsigned __int128> cur(static_cast<std::size_t>(num_states_), 0);
    for (int q = 0; q < num_states_; ++q) {
      for (Symbol s = 0; s < alphabet_.size(); ++s) {
        int t = delta_[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
        if (t < 0) continue;
        unsigned __int128 before = cur[static_cast<std::size_t>(q)];
        cur[static_cast<std::size_t>(q)] += prev[static_cast<std::size_t>(t)];
        if (cur[static_cast<std::size_t>(q)] < before)
          throw Error("word count overflow");
      }
    }
    counts_.push_back(std::move(cur));
  }
}

unsigned __int128 Regexp::count_words(int len) const {
  ensure_counts(len);
  return counts_[static_cast<std::size_t>(len)][0];
}

std::string Regexp::word_at(int len, unsigned __int128 index) const {
  ensure_counts(len);
  std::string out;
  int q = 0;
  for (int rest = len; rest > 0; --rest) {
    bool placed = false;
    for (Symbol s = 0; s < alphabet_.size() && !placed; ++s) {
      int t = delta_[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
      if (t < 0) continue;
      unsigned __int128 c =
          counts_[static_cast<std::size_t>(rest - 1)][static_cast<std::size_t>(t)];
      if (index < c) {
        out.push_back(alphabet_.at(s));
        q = t;
        placed = true;
      } else {
        index -= c;
      }
    }
    if (!placed) throw Error("word index out of range");
  }
  if (index != 0) throw Error("word index out of range");
  return out;
}

}  // namespace nfa3
