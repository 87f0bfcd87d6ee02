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

#ifndef NFA3_COMMON_HPP_
#define NFA3_COMMON_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nfa3 {

/// Base class for all toolkit errors. Subclasses name the failure mode so
/// callers can react per kind; the message carries the human diagnostic.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PathBudgetExceeded : Error { using Error::Error; };
struct FormatError : Error { using Error::Error; };
struct ConflictError : Error { using Error::Error; };
struct EmptyWordError : Error { using Error::Error; };
struct DegenerateSplit : Error { using Error::Error; };
struct LanguageTooSmall : Error { using Error::Error; };
struct NegativeGenerationStalled : Error { using Error::Error; };
struct EmptySample : Error { using Error::Error; };
struct BackendFailure : Error { using Error::Error; };
struct InconsistentModel : Error { using Error::Error; };
struct ReductionInconsistent : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct EmptyTestSet : Error { using Error::Error; };

/// Default cap on the number of physical paths materialized or counted for a
/// single word.  Exceeding it raises PathBudgetExceeded.
inline constexpr std::uint64_t kDefaultPathBudget = 100000;

/// Deterministic PRNG (splitmix64).  We deliberately avoid the standard
/// distributions: their output is implementation-defined, and reproducibility
/// across toolchains is part of the contract for generated benchmarks.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, n) by rejection; n must be nonzero.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % n;
  }

  /// Uniform integer in [0, n) for 128-bit n (used when indexing into large
  /// regular languages).
  unsigned __int128 below128(unsigned __int128 n) {
    if (n <= UINT64_MAX) return below(static_cast<std::uint64_t>(n));
    const unsigned __int128 span = ~static_cast<unsigned __int128>(0);
    const unsigned __int128 limit = span - span % n;
    for (;;) {
      unsigned __int128 v =
          (static_cast<unsigned __int128>(next()) << 64) | next();
      if (v < limit) return v % n;
    }
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  /// Derives an independent stream; used to give sub-tasks their own seeds.
  std::uint64_t fork(std::uint64_t salt) {
    Rng r(state_ ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
    return r.next();
  }

 private:
  std::uint64_t state_;
};

/// Formats a double with enough digits to round-trip exactly.
std::string format_double(double v);

/// Parses a whole nonneg integer; FormatError on junk.
std::uint64_t parse_uint(const std::string& text, const std::string& what);

/// Whole-file IO; throws Error on any failure.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace nfa3

#endif  // NFA3_COMMON_HPP_
