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

#include "pfsa/prg.h"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>

#include "pfsa/text.h"
#include "test_util.h"

namespace pfsa {
namespace {

Seed SeedFrom(std::mt19937_64& gen) {
  Seed s;
  for (auto& b : s.bytes) b = static_cast<std::uint8_t>(gen());
  return s;
}

// Vectors come from tools/gen_prg_vectors.py, a separate implementation
// of the same byte stream.
TEST(PrgTest, MatchesGoldenVectors) {
  const std::string text =
      testing::ReadFile(std::string(PFSA_SOURCE_DIR) + "/tests/golden/prg_vectors.txt");
  int checked = 0;
  for (auto line : SplitLines(text)) {
    auto toks = SplitWords(StripComment(line));
    if (toks.empty()) continue;
    ASSERT_EQ(toks.size(), 6u) << line;
    const Seed seed = Seed::FromHex(toks[0]);
    const std::size_t m = ParseUint(toks[1]);
    const Field f = Field::Make(ParseUint(toks[2]));
    const Expansion e = PrgExpand(seed, m, f);
    auto want = Split(toks[4], ',');
    ASSERT_EQ(want.size(), m);
    for (std::size_t j = 0; j < m; ++j) {
      EXPECT_EQ(f.to_hex(e.elements[j]), want[j]) << line;
    }
    EXPECT_EQ(e.next_seed.ToHex(), toks[5]) << line;
    ++checked;
  }
  EXPECT_EQ(checked, 105);
}

TEST(PrgTest, AllZeroSeedGf2) {
  const Expansion e = PrgExpand(Seed{}, 4, Field::Make(2));
  std::vector<FieldElement> want = {{0}, {1}, {1}, {0}};
  EXPECT_EQ(e.elements, want);
  EXPECT_EQ(e.next_seed.ToHex(), "7eb8d300dbb5f2c353e632c393262cf0");
}

TEST(PrgTest, Deterministic) {
  std::mt19937_64 gen(1);
  const Field f = Field::Make(257);
  for (int k = 0; k < 100; ++k) {
    Seed s = SeedFrom(gen);
    Expansion a = PrgExpand(s, 5, f), b = PrgExpand(s, 5, f);
    EXPECT_EQ(a.elements, b.elements);
    EXPECT_EQ(a.next_seed, b.next_seed);
    for (auto v : a.elements) EXPECT_TRUE(f.is_reduced(v));
  }
}

TEST(PrgTest, NextSeedDiffers) {
  std::mt19937_64 gen(2);
  const Field f = Field::Make(2);
  for (int k = 0; k < 1000; ++k) {
    Seed s = SeedFrom(gen);
    EXPECT_NE(PrgExpand(s, 3, f).next_seed, s);
  }
}

TEST(PrgTest, EvolveComposes) {
  std::mt19937_64 gen(4);
  const Field f = Field::Make(kMersenne61);
  Seed s = SeedFrom(gen);
  EXPECT_EQ(EvolveSeed(s, 0, 3, f), s);
  EXPECT_EQ(EvolveSeed(s, 2, 3, f),
            PrgExpand(PrgExpand(s, 3, f).next_seed, 3, f).next_seed);
  EXPECT_EQ(EvolveSeed(EvolveSeed(s, 7, 3, f), 5, 3, f), EvolveSeed(s, 12, 3, f));
}

TEST(SeedTest, HexRoundTrip) {
  std::mt19937_64 gen(9);
  for (int k = 0; k < 50; ++k) {
    Seed s = SeedFrom(gen);
    EXPECT_EQ(Seed::FromHex(s.ToHex()), s);
  }
  EXPECT_PFSA_ERROR(Seed::FromHex("00"), ErrorCode::kParseError);
  EXPECT_PFSA_ERROR(Seed::FromHex(std::string(32, 'g')), ErrorCode::kParseError);
}

}  // namespace
}  // namespace pfsa
