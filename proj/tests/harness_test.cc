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

#include "pfsa/harness.h"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <random>

#include "pfsa/stats.h"
#include "test_util.h"

namespace pfsa {
namespace {

using testing::ExampleAutomaton;
using testing::RandomAutomaton;
using testing::RandomSchedule;

SimulationConfig BaseConfig(Scheme s, std::size_t n, std::size_t t, std::uint64_t p) {
  SimulationConfig cfg;
  cfg.automaton = ExampleAutomaton();
  cfg.scheme = s;
  cfg.n = n;
  cfg.t = t;
  cfg.modulus = p;
  return cfg;
}

TEST(ChiSquareTest, PValueKnownValues) {
  // Upper 5% point of chi-square(1) is 3.841459; of chi-square(10), 18.307038.
  EXPECT_NEAR(ChiSquarePValue(3.841459, 1), 0.05, 1e-6);
  EXPECT_NEAR(ChiSquarePValue(18.307038, 10), 0.05, 1e-6);
  EXPECT_EQ(ChiSquarePValue(5, 0), 1.0);
}

TEST(ChiSquareTest, GoodnessOfFitByHand) {
  // Observed 10, 20, 30 against uniform: expected 20 each, statistic 10.
  std::uint64_t obs[] = {10, 20, 30};
  double probs[] = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  ChiSquareResult r = ChiSquareGoodnessOfFit(obs, probs);
  EXPECT_NEAR(r.statistic, 10.0, 1e-9);
  EXPECT_EQ(r.dof, 2);
  EXPECT_NEAR(r.p_value, std::exp(-5.0), 1e-9);  // chi-square(2) tail is exp(-x/2)
}

TEST(ChiSquareTest, TwoSampleByHand) {
  // 2x2 table (10, 20 / 20, 10): expected 15 everywhere, statistic 4 * 25/15.
  std::uint64_t a[] = {10, 20}, b[] = {20, 10};
  ChiSquareResult r = ChiSquareTwoSample(a, b);
  EXPECT_NEAR(r.statistic, 100.0 / 15, 1e-9);
  EXPECT_EQ(r.dof, 1);
  double p[] = {0.01, 0.2, 0.5};
  EXPECT_NEAR(BonferroniCombine(p), 0.03, 1e-12);
}

TEST(SimulationTest, ZeroHorizonReconstructsInit) {
  for (std::uint32_t init = 1; init <= 4; ++init) {
    SimulationConfig cfg = BaseConfig(Scheme::kTN, 5, 2, 257);
    cfg.init = {init};
    SimulationResult res = RunSimulation(cfg);
    EXPECT_EQ(res.oracle, StateIndex{init});
    EXPECT_TRUE(res.view.empty());
    EXPECT_TRUE(OracleCheck(cfg).ok);
  }
}

TEST(SimulationTest, RandomConfigsPassOracle) {
  std::mt19937_64 gen(21);
  for (int k = 0; k < 60; ++k) {
    const Scheme s = static_cast<Scheme>(k % 3);
    SimulationConfig cfg;
    cfg.automaton = RandomAutomaton(gen, 6, 3);
    cfg.scheme = s;
    cfg.n = s == Scheme::kNN ? 2 + gen() % 5 : 3 + gen() % 3;
    cfg.t = s == Scheme::kNN ? 0 : 1 + gen() % ((cfg.n - 1) / 2);
    cfg.modulus = s == Scheme::kTN ? 257 : 2;
    cfg.init = {static_cast<std::uint32_t>(1 + gen() % cfg.automaton->num_states())};
    cfg.schedule = RandomSchedule(gen, *cfg.automaton, 40);
    cfg.rng_seed = gen();
    CheckReport rep = OracleCheck(cfg);
    EXPECT_TRUE(rep.ok) << rep.failure;
  }
}

TEST(SimulationTest, InjectedFaultIsCaught) {
  for (Scheme s : {Scheme::kNN, Scheme::kTN, Scheme::kTNNaive}) {
    SimulationConfig cfg = BaseConfig(s, 5, s == Scheme::kNN ? 0 : 2, s == Scheme::kTN ? 257 : 2);
    cfg.schedule = {TickInput::Of("beta"), TickInput::Idle(), TickInput::Of("alpha")};
    ASSERT_TRUE(OracleCheck(cfg).ok);
    cfg.fault = LabelFault{2, 1, 3};
    CheckReport rep = OracleCheck(cfg);
    EXPECT_FALSE(rep.ok);
    EXPECT_NE(rep.failure.find("tick 1"), std::string::npos) << rep.failure;
  }
}

TEST(SimulationTest, TraceJsonLines) {
  SimulationConfig cfg = BaseConfig(Scheme::kNN, 3, 0, 2);
  cfg.schedule = {TickInput::Of("alpha"), TickInput::Idle()};
  SimulationResult res = RunSimulation(cfg);
  std::string out = TraceToJsonLines(res.trace, Field::Make(2));
  auto lines = std::count(out.begin(), out.end(), '\n');
  ASSERT_EQ(lines, 3);
  auto first = nlohmann::json::parse(out.substr(0, out.find('\n')));
  EXPECT_EQ(first["tick"], 0);
  EXPECT_TRUE(first["symbol"].is_null());
  EXPECT_EQ(first["oracle"], 1);
  EXPECT_EQ(first["labels"].size(), 3u);
  EXPECT_EQ(first["secrets"][0], (nlohmann::json{1, 0, 0, 0}));
}

TEST(SimulationTest, Deterministic) {
  SimulationConfig cfg = BaseConfig(Scheme::kTN, 5, 2, kMersenne61);
  cfg.schedule = {TickInput::Of("alpha"), TickInput::Of("beta")};
  cfg.rng_seed = 99;
  const Field f = Field::Make(kMersenne61);
  EXPECT_EQ(TraceToJsonLines(RunSimulation(cfg).trace, f),
            TraceToJsonLines(RunSimulation(cfg).trace, f));
  cfg.rng_seed = 100;
  SimulationConfig other = cfg;
  other.rng_seed = 99;
  EXPECT_NE(TraceToJsonLines(RunSimulation(cfg).trace, f),
            TraceToJsonLines(RunSimulation(other).trace, f));
}

std::vector<std::vector<FieldElement>> UniformSamples(std::mt19937_64& gen, std::size_t count,
                                                      std::size_t dims, std::uint64_t p) {
  std::vector<std::vector<FieldElement>> out(count, std::vector<FieldElement>(dims));
  for (auto& s : out) {
    for (auto& v : s) v = {gen() % p};
  }
  return out;
}

// With one coordinate there is a single test, so under the null the
// p-value should itself be uniform.
TEST(StatTest, UniformityPValuesAreCalibrated) {
  std::mt19937_64 gen(31);
  std::vector<std::uint64_t> hist(10, 0);
  for (int k = 0; k < 400; ++k) {
    auto samples = UniformSamples(gen, 2000, 1, 7);
    double p = ViewUniformityTest(samples, Field::Make(7)).p_value;
    ++hist[std::min<std::size_t>(9, static_cast<std::size_t>(p * 10))];
  }
  std::vector<double> flat(10, 0.1);
  EXPECT_GT(ChiSquareGoodnessOfFit(hist, flat).p_value, 0.001);
}

TEST(StatTest, TwoSamplePValuesAreCalibrated) {
  std::mt19937_64 gen(32);
  std::vector<std::uint64_t> hist(10, 0);
  for (int k = 0; k < 400; ++k) {
    auto a = UniformSamples(gen, 1000, 1, 5), b = UniformSamples(gen, 1000, 1, 5);
    double p = TwoSampleViewTest(a, b, Field::Make(5)).p_value;
    ++hist[std::min<std::size_t>(9, static_cast<std::size_t>(p * 10))];
  }
  std::vector<double> flat(10, 0.1);
  EXPECT_GT(ChiSquareGoodnessOfFit(hist, flat).p_value, 0.001);
}

TEST(StatTest, UniformityPowerAndBinning) {
  std::mt19937_64 gen(33);
  auto samples = UniformSamples(gen, 5000, 3, kMersenne61);
  StatReport ok = ViewUniformityTest(samples, Field::Make(kMersenne61));
  EXPECT_GT(ok.p_value, 0.001);
  EXPECT_EQ(ok.tests, 3u);  // 16^3 joint cells exceed N / 5, so coordinates only
  for (auto& s : samples) s[1] = {5};
  EXPECT_LT(ViewUniformityTest(samples, Field::Make(kMersenne61)).p_value, 1e-9);
}

TEST(StatTest, InsufficientSamples) {
  std::mt19937_64 gen(34);
  auto few = UniformSamples(gen, 999, 2, 2);
  EXPECT_PFSA_ERROR(ViewUniformityTest(few, Field::Make(2)), ErrorCode::kInsufficientSamples);
  EXPECT_PFSA_ERROR(TwoSampleViewTest(few, few, Field::Make(2)),
                    ErrorCode::kInsufficientSamples);
}

TEST(StatTest, SampledViewsReproducible) {
  SimulationConfig cfg = BaseConfig(Scheme::kNN, 3, 0, 2);
  cfg.schedule = InputStream(3, TickInput::Of("beta"));
  cfg.timeline = {{{1, 1}, {3, 3}}};
  auto a = SampleViewLabels(cfg, 200, 4), b = SampleViewLabels(cfg, 200, 1);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.front().size(), 8u);
}

TEST(StatTest, FormatReport) {
  StatReport r{"x", 1000, 3.5, 2, 0.25, 1};
  EXPECT_EQ(FormatReport(r, false), "test=x N=1000 statistic=3.5 dof=2 p=0.25 tests=1\n");
  auto j = nlohmann::json::parse(FormatReport(r, true));
  EXPECT_EQ(j["test"], "x");
  EXPECT_EQ(j["p_value"], 0.25);
}

TEST(ExactTest, EmptyTimelineIsSingleton) {
  SimulationConfig cfg = BaseConfig(Scheme::kNN, 2, 0, 2);
  cfg.variant = Variant::kIntermediate;
  cfg.schedule = {TickInput::Of("alpha")};
  ExactDistribution d = ExactViewDistribution(cfg, 2);
  ASSERT_EQ(d.counts.size(), 1u);
  EXPECT_EQ(d.counts.begin()->first, "");
  EXPECT_EQ(d.counts.begin()->second, d.total);
}

TEST(ExactTest, TooLarge) {
  SimulationConfig cfg = BaseConfig(Scheme::kNN, 6, 0, 2);
  cfg.variant = Variant::kIntermediate;
  EXPECT_PFSA_ERROR(ExactViewDistribution(cfg, 16, 1 << 20), ErrorCode::kTooLargeToEnumerate);
}

TEST(ExactTest, IntermediateViewIgnoresInputs) {
  auto two = std::make_shared<const Automaton>(Automaton::Parse(
      "states 2\nalphabet a b\ntrans 1 a 1\ntrans 2 a 1\ntrans 1 b 2\ntrans 2 b 1\n"));
  SimulationConfig cfg = BaseConfig(Scheme::kNN, 2, 0, 2);
  cfg.automaton = two;
  cfg.variant = Variant::kIntermediate;
  cfg.timeline = {{{2, 1}}};
  cfg.schedule = {TickInput::Of("a"), TickInput::Idle()};
  ExactDistribution base = ExactViewDistribution(cfg, 4);
  cfg.schedule = {TickInput::Of("b"), TickInput::Idle()};
  EXPECT_EQ(ExactViewDistribution(cfg, 4), base);
  cfg.init = {2};
  EXPECT_EQ(ExactViewDistribution(cfg, 4), base);
  EXPECT_EQ(base.total, 64u);  // 2^4 seeds times 2^2 label values
  EXPECT_EQ(base.counts.size(), 64u);
}

// The same enumeration over the real scheme shows its view does depend on
// the state once labels stop being refreshed.
TEST(ExactTest, BrokenSchemeViewDependsOnState) {
  auto two = std::make_shared<const Automaton>(Automaton::Parse(
      "states 2\nalphabet a\ntrans 1 a 1\ntrans 2 a 1\n"));
  SimulationConfig cfg = BaseConfig(Scheme::kNN, 2, 0, 2);
  cfg.automaton = two;
  cfg.variant = Variant::kNoRerandomize;
  cfg.timeline = {{{1, 1}}};
  cfg.schedule = {TickInput::Of("a")};
  ExactDistribution base = ExactViewDistribution(cfg, 2);
  cfg.schedule = {TickInput::Idle()};
  cfg.init = {2};
  EXPECT_NE(ExactViewDistribution(cfg, 2), base);
}

}  // namespace
}  // namespace pfsa
