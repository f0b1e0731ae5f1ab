// Copyright 2026 The pfsa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PFSA_AUTOMATON_H_
#define PFSA_AUTOMATON_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pfsa {

// 1-based automaton state index. Index 0 is never a state.
struct StateIndex {
  std::uint32_t value = 1;

  friend auto operator<=>(const StateIndex&, const StateIndex&) = default;
};

// One clock tick. An empty symbol is a tick on which no input arrived.
struct TickInput {
  std::optional<std::string> symbol;

  static TickInput Idle() { return {}; }
  static TickInput Of(std::string s) { return {std::move(s)}; }

  friend bool operator==(const TickInput&, const TickInput&) = default;
};

using InputStream = std::vector<TickInput>;

// Deterministic, total automaton without distinguished initial or final
// states. Immutable after construction.
class Automaton {
 public:
  // `transitions[s][q]` is the 1-based target of state q+1 on symbol s.
  // Throws kInvalidArgument unless the table is total and in range.
  Automaton(std::vector<std::string> alphabet,
            std::vector<std::vector<std::uint32_t>> transitions);

  // Parses the line-based text format:
  //   states <m>
  //   alphabet <tok1> <tok2> ...
  //   trans <from> <tok> <to>      (exactly m * |alphabet| lines)
  // `#` starts a comment. Throws kParseError, kPartialTransition or
  // kDuplicateTransition.
  static Automaton Parse(std::string_view text);

  std::string Serialize() const;

  std::size_t num_states() const { return num_states_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }

  // Throws kUnknownSymbol.
  std::size_t SymbolIndex(std::string_view symbol) const;

  StateIndex Step(StateIndex s, std::string_view symbol) const;
  StateIndex StepIndex(StateIndex s, std::size_t symbol_index) const {
    return {table_[symbol_index][s.value - 1]};
  }

  friend bool operator==(const Automaton&, const Automaton&) = default;

 private:
  std::size_t num_states_;
  std::vector<std::string> alphabet_;
  std::vector<std::vector<std::uint32_t>> table_;
};

// Plain execution: folds Step over the stream, idle ticks are no-ops.
StateIndex RunDirect(const Automaton& a, StateIndex init,
                     std::span<const TickInput> stream);

// Tick trace format: one line per tick, a symbol token or `-` for idle.
// Blank lines and `#` comments are skipped.
InputStream ParseTickTrace(std::string_view text);
std::string FormatTickTrace(std::span<const TickInput> stream);

}  // namespace pfsa

#endif  // PFSA_AUTOMATON_H_
