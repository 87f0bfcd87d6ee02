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

#ifndef NFA3_ENCODING_HPP_
#define NFA3_ENCODING_HPP_

#include "nfa3/formula.hpp"
#include "nfa3/splitting.hpp"

namespace nfa3 {

struct EncodeResult {
  Formula formula;
  VarMap vars;
};

/// Propositional model of "a consistent k-state 3-sort NFA exists".  Each
/// sample word, cut into (u, v) by the splitting, must run u from the
/// initial state, continue with v, and land in a final of its own polarity
/// while avoiding the opposite sort.  Prefix-path variables are shared
/// across words through the closure of all u parts under nonempty prefixes,
/// suffix-path variables through the closure of all v parts under nonempty
/// suffixes.  Empty parts are resolved by substitution: a lambda prefix
/// pins the join state to the initial state, a lambda suffix makes the
/// prefix path end the run.
EncodeResult encode_core_k(const Sample& sample, const Splitting& splitting,
                           int k);

/// Variant with two extra dedicated final states: state k+1 accepts, state
/// k+2 rejects, neither has outgoing arcs, and every arc into them
/// duplicates an arc into a core state.  Suffix paths only ever target the
/// two finals, which shrinks the suffix machinery from k^2 to 2k variables
/// per suffix.  Possible-final variables mark core states where sample
/// words of one polarity terminate and none of the other polarity passes,
/// so the automaton can later be reduced back to k states.
EncodeResult encode_core_k2(const Sample& sample, const Splitting& splitting,
                            int k);

/// Reads a k-state automaton out of a satisfying assignment for
/// encode_core_k.  Throws InconsistentModel if the assignment marks a state
/// as both accepting and rejecting.
Nfa3 decode_nfa(const VarMap& vars, const Alphabet& alphabet,
                const std::vector<std::uint8_t>& model);

struct DecodedK2 {
  Nfa3 nfa;                        ///< k+2 states; the two finals are fixed
  std::vector<State> astar, rstar; ///< possible finals among the core states
};

/// Reads the (k+2)-state automaton and the possible-final sets out of a
/// satisfying assignment for encode_core_k2, validating the structural
/// invariants (final states are sinks, arcs into finals are duplicated,
/// possible-final sets disjoint).
DecodedK2 decode_nfa_k2(const VarMap& vars, const Alphabet& alphabet,
                        const std::vector<std::uint8_t>& model);

/// Drops the two dedicated finals and their incident arcs; the possible
/// final sets become F+ and F- of the reduced k-state automaton.
Nfa3 reduce_k2_to_k(const Nfa3& k2, const std::vector<State>& astar,
                    const std::vector<State>& rstar);

}  // namespace nfa3

#endif  // NFA3_ENCODING_HPP_
