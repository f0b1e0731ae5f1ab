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

// Shared helpers for the unit tests.

#ifndef PFSA_TESTS_TEST_UTIL_H_
#define PFSA_TESTS_TEST_UTIL_H_

#include <gtest/gtest.h>

#include <cstdint>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pfsa/automaton.h"
#include "pfsa/error.h"
#include "pfsa/prg.h"

#ifndef PFSA_SOURCE_DIR
#define PFSA_SOURCE_DIR "."
#endif

namespace pfsa::testing {

#define EXPECT_PFSA_ERROR(stmt, expected_code)                       \
  do {                                                               \
    try {                                                            \
      stmt;                                                          \
      ADD_FAILURE() << #stmt " did not throw";                       \
    } catch (const ::pfsa::Error& e) {                               \
      EXPECT_EQ(e.code(), expected_code) << e.what();                \
    }                                                                \
  } while (0)

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::shared_ptr<const Automaton> ExampleAutomaton() {
  return std::make_shared<const Automaton>(
      Automaton::Parse(ReadFile(std::string(PFSA_SOURCE_DIR) + "/data/example.fsa")));
}

inline std::shared_ptr<const Automaton> RandomAutomaton(std::mt19937_64& gen,
                                                        std::size_t max_states,
                                                        std::size_t max_symbols) {
  const std::size_t m = 1 + gen() % max_states;
  const std::size_t k = 1 + gen() % max_symbols;
  std::vector<std::string> alphabet;
  std::vector<std::vector<std::uint32_t>> table(k, std::vector<std::uint32_t>(m));
  for (std::size_t s = 0; s < k; ++s) {
    alphabet.push_back("g" + std::to_string(s));
    for (auto& to : table[s]) to = static_cast<std::uint32_t>(1 + gen() % m);
  }
  return std::make_shared<const Automaton>(std::move(alphabet), std::move(table));
}

// Roughly half the ticks carry no symbol.
inline InputStream RandomSchedule(std::mt19937_64& gen, const Automaton& a,
                                  std::size_t horizon) {
  InputStream out;
  for (std::size_t r = 0; r < horizon; ++r) {
    if (gen() % 2 == 0) {
      out.push_back(TickInput::Idle());
    } else {
      out.push_back(TickInput::Of(a.alphabet()[gen() % a.alphabet().size()]));
    }
  }
  return out;
}

// Returns fixed elements and a successor seed that increments the first
// byte, so seed evolution stays observable.
class FixedPrg final : public Prg {
 public:
  explicit FixedPrg(std::vector<std::uint64_t> values) : values_(std::move(values)) {}

  Expansion Expand(const Seed& seed, std::size_t m, const Field& field) const override {
    Expansion e;
    for (std::size_t j = 0; j < m; ++j) {
      e.elements.push_back(field.from_uint(j < values_.size() ? values_[j] : 0));
    }
    e.next_seed = seed;
    ++e.next_seed.bytes[0];
    return e;
  }

 private:
  std::vector<std::uint64_t> values_;
};

}  // namespace pfsa::testing

#endif  // PFSA_TESTS_TEST_UTIL_H_
