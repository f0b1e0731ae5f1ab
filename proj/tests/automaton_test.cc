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

#include <gtest/gtest.h>

#include <random>

#include "test_util.h"

namespace pfsa {
namespace {

using testing::ExampleAutomaton;
using testing::RandomAutomaton;
using testing::RandomSchedule;

TEST(AutomatonParseTest, SelfLoop) {
  Automaton a = Automaton::Parse("states 1\nalphabet a\ntrans 1 a 1\n");
  EXPECT_EQ(a.num_states(), 1u);
  EXPECT_EQ(a.alphabet().size(), 1u);
  EXPECT_EQ(a.Step({1}, "a"), StateIndex{1});
}

TEST(AutomatonParseTest, BundledExampleFeedsStateTwoFromTwoAndFour) {
  auto a = ExampleAutomaton();
  EXPECT_EQ(a->num_states(), 4u);
  EXPECT_EQ(a->Step({2}, "alpha"), StateIndex{2});
  EXPECT_EQ(a->Step({4}, "alpha"), StateIndex{2});
  for (std::uint32_t s = 1; s <= 4; ++s) EXPECT_NE(a->Step({s}, "alpha"), StateIndex{3});
  EXPECT_EQ(RunDirect(*a, {4}, InputStream{TickInput::Of("alpha")}), StateIndex{2});
}

TEST(AutomatonParseTest, CommentsAndBlankLines) {
  Automaton a = Automaton::Parse(
      "# header\n\nstates 2   # two\nalphabet x\ntrans 1 x 2\ntrans 2 x 1\n");
  EXPECT_EQ(a.Step({1}, "x"), StateIndex{2});
}

TEST(AutomatonParseTest, Errors) {
  EXPECT_PFSA_ERROR(Automaton::Parse("states 2\nalphabet a\ntrans 1 a 2\n"),
                    ErrorCode::kPartialTransition);
  EXPECT_PFSA_ERROR(
      Automaton::Parse("states 1\nalphabet a\ntrans 1 a 1\ntrans 1 a 1\n"),
      ErrorCode::kDuplicateTransition);
  EXPECT_PFSA_ERROR(Automaton::Parse("states x\n"), ErrorCode::kParseError);
  EXPECT_PFSA_ERROR(Automaton::Parse("states 1\nalphabet a\ntrans 1 b 1\n"),
                    ErrorCode::kParseError);
  EXPECT_PFSA_ERROR(Automaton::Parse("states 1\nalphabet a\ntrans 1 a 2\n"),
                    ErrorCode::kParseError);
  EXPECT_PFSA_ERROR(Automaton::Parse("states 1\nalphabet a a\n"), ErrorCode::kParseError);
  EXPECT_PFSA_ERROR(Automaton::Parse("bogus\n"), ErrorCode::kParseError);
  EXPECT_PFSA_ERROR(Automaton::Parse(""), ErrorCode::kParseError);
}

TEST(AutomatonStepTest, UnknownSymbol) {
  auto a = ExampleAutomaton();
  EXPECT_PFSA_ERROR(a->Step({1}, "gamma"), ErrorCode::kUnknownSymbol);
  EXPECT_PFSA_ERROR(RunDirect(*a, {1}, InputStream{TickInput::Of("gamma")}),
                    ErrorCode::kUnknownSymbol);
}

TEST(AutomatonTest, SerializeRoundTrip) {
  std::mt19937_64 gen(3);
  for (int k = 0; k < 200; ++k) {
    auto a = RandomAutomaton(gen, 8, 4);
    EXPECT_EQ(Automaton::Parse(a->Serialize()), *a);
  }
}

TEST(RunDirectTest, EmptyStreamIsIdentity) {
  auto a = ExampleAutomaton();
  for (std::uint32_t s = 1; s <= 4; ++s) EXPECT_EQ(RunDirect(*a, {s}, {}), StateIndex{s});
}

TEST(RunDirectTest, IdleTicksAreNoOps) {
  auto a = ExampleAutomaton();
  InputStream x = {TickInput::Idle(), TickInput::Of("beta"), TickInput::Idle()};
  EXPECT_EQ(RunDirect(*a, {1}, x), StateIndex{2});
}

TEST(RunDirectTest, ComposesOverConcatenation) {
  std::mt19937_64 gen(5);
  for (int k = 0; k < 200; ++k) {
    auto a = RandomAutomaton(gen, 8, 4);
    InputStream x1 = RandomSchedule(gen, *a, 50), x2 = RandomSchedule(gen, *a, 50);
    StateIndex s{static_cast<std::uint32_t>(1 + gen() % a->num_states())};
    InputStream both = x1;
    both.insert(both.end(), x2.begin(), x2.end());
    EXPECT_EQ(RunDirect(*a, RunDirect(*a, s, x1), x2), RunDirect(*a, s, both));
  }
}

TEST(TickTraceTest, RoundTrip) {
  InputStream x = {TickInput::Of("alpha"), TickInput::Idle(), TickInput::Of("beta")};
  EXPECT_EQ(ParseTickTrace(FormatTickTrace(x)), x);
  EXPECT_EQ(ParseTickTrace("alpha\n-\n# c\nbeta\n"), x);
  EXPECT_TRUE(ParseTickTrace("").empty());
  EXPECT_PFSA_ERROR(ParseTickTrace("alpha beta\n"), ErrorCode::kParseError);
}

}  // namespace
}  // namespace pfsa
