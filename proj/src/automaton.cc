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

#include "pfsa/automaton.h"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "pfsa/error.h"
#include "pfsa/text.h"

namespace pfsa {
namespace {

std::uint32_t ParseStateNumber(std::string_view tok, std::size_t line_no) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) +
                                            ": bad number '" +
                                            std::string(tok) + "'");
  }
  return v;
}

}  // namespace

Automaton::Automaton(std::vector<std::string> alphabet,
                     std::vector<std::vector<std::uint32_t>> transitions)
    : num_states_(transitions.empty() ? 0 : transitions.front().size()),
      alphabet_(std::move(alphabet)),
      table_(std::move(transitions)) {
  if (alphabet_.empty() || num_states_ == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "automaton needs at least one state and one symbol");
  }
  if (table_.size() != alphabet_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "transition table does not match alphabet size");
  }
  for (std::size_t s = 0; s < alphabet_.size(); ++s) {
    for (std::size_t k = 0; k < s; ++k) {
      if (alphabet_[k] == alphabet_[s]) {
        throw Error(ErrorCode::kInvalidArgument,
                    "duplicate symbol '" + alphabet_[s] + "'");
      }
    }
    if (table_[s].size() != num_states_) {
      throw Error(ErrorCode::kInvalidArgument, "ragged transition table");
    }
    for (std::uint32_t to : table_[s]) {
      if (to < 1 || to > num_states_) {
        throw Error(ErrorCode::kInvalidArgument,
                    "transition target " + std::to_string(to) +
                        " out of range");
      }
    }
  }
}

Automaton Automaton::Parse(std::string_view text) {
  std::optional<std::size_t> m;
  std::vector<std::string> alphabet;
  std::vector<std::vector<std::uint32_t>> table;
  std::size_t line_no = 0;
  for (std::string_view raw : SplitLines(text)) {
    ++line_no;
    auto toks = SplitWords(StripComment(raw));
    if (toks.empty()) continue;
    auto fail = [&](const std::string& why) {
      return Error(ErrorCode::kParseError,
                   "line " + std::to_string(line_no) + ": " + why);
    };
    if (toks[0] == "states") {
      if (m || toks.size() != 2) throw fail("expected 'states <m>' once");
      m = ParseStateNumber(toks[1], line_no);
      if (*m == 0) throw fail("need at least one state");
    } else if (toks[0] == "alphabet") {
      if (!m || !alphabet.empty() || toks.size() < 2) {
        throw fail("expected 'alphabet <tok>...' once, after 'states'");
      }
      for (std::size_t k = 1; k < toks.size(); ++k) {
        std::string tok(toks[k]);
        if (tok == "-" ||
            std::find(alphabet.begin(), alphabet.end(), tok) != alphabet.end()) {
          throw fail("bad or duplicate symbol '" + tok + "'");
        }
        alphabet.push_back(tok);
      }
      table.assign(alphabet.size(), std::vector<std::uint32_t>(*m, 0));
    } else if (toks[0] == "trans") {
      if (alphabet.empty() || toks.size() != 4) {
        throw fail("expected 'trans <from> <tok> <to>' after 'alphabet'");
      }
      std::uint32_t from = ParseStateNumber(toks[1], line_no);
      std::uint32_t to = ParseStateNumber(toks[3], line_no);
      auto it = std::find(alphabet.begin(), alphabet.end(), toks[2]);
      if (it == alphabet.end()) {
        throw fail("symbol '" + std::string(toks[2]) + "' not in alphabet");
      }
      if (from < 1 || from > *m || to < 1 || to > *m) {
        throw fail("state out of range");
      }
      auto& slot = table[it - alphabet.begin()][from - 1];
      if (slot != 0) {
        throw Error(ErrorCode::kDuplicateTransition,
                    "line " + std::to_string(line_no) + ": (" +
                        std::to_string(from) + ", " + std::string(toks[2]) +
                        ") defined twice");
      }
      slot = to;
    } else {
      throw fail("unknown directive '" + std::string(toks[0]) + "'");
    }
  }
  if (!m || alphabet.empty()) {
    throw Error(ErrorCode::kParseError, "missing 'states' or 'alphabet'");
  }
  for (std::size_t s = 0; s < alphabet.size(); ++s) {
    for (std::size_t q = 0; q < *m; ++q) {
      if (table[s][q] == 0) {
        throw Error(ErrorCode::kPartialTransition,
                    "no transition for (" + std::to_string(q + 1) + ", " +
                        alphabet[s] + ")");
      }
    }
  }
  return Automaton(std::move(alphabet), std::move(table));
}

std::string Automaton::Serialize() const {
  std::ostringstream out;
  out << "states " << num_states_ << "\nalphabet";
  for (const auto& s : alphabet_) out << ' ' << s;
  out << '\n';
  for (std::size_t q = 0; q < num_states_; ++q) {
    for (std::size_t s = 0; s < alphabet_.size(); ++s) {
      out << "trans " << q + 1 << ' ' << alphabet_[s] << ' ' << table_[s][q]
          << '\n';
    }
  }
  return out.str();
}

std::size_t Automaton::SymbolIndex(std::string_view symbol) const {
  for (std::size_t s = 0; s < alphabet_.size(); ++s) {
    if (alphabet_[s] == symbol) return s;
  }
  throw Error(ErrorCode::kUnknownSymbol,
              "symbol '" + std::string(symbol) + "' not in alphabet");
}

StateIndex Automaton::Step(StateIndex s, std::string_view symbol) const {
  if (s.value < 1 || s.value > num_states_) {
    throw Error(ErrorCode::kInvalidArgument,
                "state " + std::to_string(s.value) + " out of range");
  }
  return StepIndex(s, SymbolIndex(symbol));
}

StateIndex RunDirect(const Automaton& a, StateIndex init,
                     std::span<const TickInput> stream) {
  StateIndex s = init;
  for (const auto& tick : stream) {
    if (tick.symbol) s = a.Step(s, *tick.symbol);
  }
  return s;
}

InputStream ParseTickTrace(std::string_view text) {
  InputStream out;
  std::size_t line_no = 0;
  for (std::string_view raw : SplitLines(text)) {
    ++line_no;
    auto toks = SplitWords(StripComment(raw));
    if (toks.empty()) continue;
    if (toks.size() != 1) {
      throw Error(ErrorCode::kParseError,
                  "tick trace line " + std::to_string(line_no) +
                      ": expected one token");
    }
    out.push_back(toks[0] == "-" ? TickInput::Idle()
                                 : TickInput::Of(std::string(toks[0])));
  }
  return out;
}

std::string FormatTickTrace(std::span<const TickInput> stream) {
  std::string out;
  for (const auto& t : stream) {
    out += t.symbol ? *t.symbol : "-";
    out += '\n';
  }
  return out;
}

}  // namespace pfsa
