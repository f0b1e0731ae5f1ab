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

// Simulation driver with an omniscient view of every agent.
//
// The harness plays dealer, clock and adversary: it initializes a
// deployment, delivers the same TickInput to every agent on every tick,
// captures corrupted agents at tick barriers, and records what no single
// party could see (all labels, reconstructed secrets, the plain-execution
// state) so invariants can be checked tick by tick.
//
// The statistical privacy tests here are regression signals. A passing
// chi-square test says the sampled views did not look state-dependent at
// the chosen sample size; it is not a proof of privacy.

#ifndef PFSA_HARNESS_H_
#define PFSA_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pfsa/adversary.h"
#include "pfsa/deployment.h"
#include "pfsa/random.h"

namespace pfsa {

enum class Variant {
  kProtocol,        // the real scheme
  kIntermediate,    // the lazily-updating comparison scheme
  kNoRerandomize,   // broken on purpose: seeds evolve, labels never refreshed
};

// Adds 1 to one label of one agent right after the given tick.
struct LabelFault {
  std::uint32_t agent;
  std::uint64_t tick;
  std::uint32_t state;
};

struct SimulationConfig {
  std::shared_ptr<const Automaton> automaton;
  Scheme scheme = Scheme::kNN;
  std::size_t n = 2;
  std::size_t t = 0;
  std::uint64_t modulus = 2;
  StateIndex init{1};
  InputStream schedule;  // one entry per tick; its length is the horizon
  CorruptionTimeline timeline;
  std::uint64_t rng_seed = 0;
  Variant variant = Variant::kProtocol;
  std::optional<LabelFault> fault;
};

// Throws kTickOutOfRange for corruptions past the horizon, kUnknownSymbol
// for schedule symbols outside the alphabet, and the scheme's own
// parameter errors.
void ValidateConfig(const SimulationConfig& cfg);

// Dealer initialization for cfg.scheme.
Deployment InitDeployment(const SimulationConfig& cfg, RandomSource& rng);

using LabelMatrix = std::vector<std::vector<std::vector<FieldElement>>>;

struct TickRecord {
  std::uint64_t tick = 0;
  std::optional<std::string> symbol;
  LabelMatrix labels;   // [agent - 1][instance][state - 1]
  LabelMatrix refresh;  // same shape; empty for tick 0
  // Reconstructed secrets per instance (instances in canonical order).
  std::vector<std::vector<FieldElement>> secrets;
  // Every member of every seed group holds the same seed.
  bool lockstep = true;
  StateIndex oracle;
};

struct Trace {
  std::vector<TickRecord> ticks;
};

struct SimulationOptions {
  bool record_trace = true;
  // Overrides the dealer randomness derived from cfg.rng_seed.
  RandomSource* dealer_rng = nullptr;
  const Prg* prg = nullptr;
};

struct SimulationResult {
  Trace trace;
  View view;
  std::vector<AgentState> agents;
  std::optional<DealerRecord> dealer;  // absent for the intermediate scheme
  StateIndex oracle;
};

SimulationResult RunSimulation(const SimulationConfig& cfg,
                               const SimulationOptions& opts = {});

struct CheckReport {
  bool ok = true;
  std::string failure;
};

// Per-tick checks: seed lockstep; reconstructed secrets one-hot at the
// plain-execution state; for tn every state's labels on one degree-t
// polynomial; refresh terms summing to zero (XOR for GF(2) instances,
// value at 0 of the interpolated refresh polynomial for tn).
CheckReport CheckTraceInvariants(const SimulationConfig& cfg, const Trace& trace);

// Runs the configuration and checks the trace invariants plus final
// reconstruction against plain execution: all agents for nn, every
// (t+1)-subset for tn, every responder set of size >= t+1 and every
// instance for tn-naive. Any library error counts as a failure.
CheckReport OracleCheck(const SimulationConfig& cfg);

// Samples of flattened captured labels, one per independent trial. Trial k
// draws its dealer randomness from DeterministicRandomSource(rng_seed, k).
std::vector<std::vector<FieldElement>> SampleViewLabels(
    const SimulationConfig& cfg, std::size_t trials, unsigned threads = 0);

inline constexpr std::size_t kMinStatSamples = 1000;

struct StatReport {
  std::string name;
  std::size_t samples = 0;
  double statistic = 0;  // of the test that produced the minimum p-value
  double dof = 0;
  double p_value = 1;    // Bonferroni-combined
  std::size_t tests = 0;
};

// Chi-square fit of captured labels against uniform over the field, per
// label position (and jointly when the joint table is small enough).
// Values are binned into 16 buckets when the field has more than 16
// elements. Throws kInsufficientSamples below kMinStatSamples.
StatReport ViewUniformityTest(std::span<const std::vector<FieldElement>> samples,
                              const Field& field);

// Two-sample chi-square on captured labels: joint table when it has at
// most N/5 cells, otherwise every coordinate and every coordinate pair,
// Bonferroni-combined.
StatReport TwoSampleViewTest(std::span<const std::vector<FieldElement>> a,
                             std::span<const std::vector<FieldElement>> b,
                             const Field& field);

// Exact distribution of the whole view (labels, seeds, ticks) over every
// dealer randomness outcome. Seeds are drawn from 2^seed_bits values.
struct ExactDistribution {
  std::map<std::string, std::uint64_t> counts;  // encoded view -> outcomes
  std::uint64_t total = 0;

  friend bool operator==(const ExactDistribution&,
                         const ExactDistribution&) = default;
};

ExactDistribution ExactViewDistribution(const SimulationConfig& cfg,
                                        unsigned seed_bits = 2,
                                        std::uint64_t max_outcomes = 1u << 24);

// One JSON object per tick record.
std::string TraceToJsonLines(const Trace& trace, const Field& field);

std::string FormatReport(const StatReport& report, bool json);

}  // namespace pfsa

#endif  // PFSA_HARNESS_H_
