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

// Scheme-independent agent machinery.
//
// Every agent holds one label per automaton state and one seed per group of
// agents it shares randomness with. On each clock tick it (1) replaces each
// label by the sum of the labels of its predecessor states under the input
// symbol, if any, and (2) for every owned group, expands the group seed into
// b_1..b_m, overwrites the seed with its successor, and adds weight * b_j
// to label j. The weight is 1 for the additive scheme and the group
// zero-polynomial value at the agent's index for the Shamir scheme, so the
// refresh terms of all agents cancel in reconstruction.

#ifndef PFSA_PROTOCOL_H_
#define PFSA_PROTOCOL_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pfsa/automaton.h"
#include "pfsa/field.h"
#include "pfsa/prg.h"

namespace pfsa {

enum class Scheme {
  kNN,       // (n,n): XOR shares over GF(2), pairwise seeds
  kTN,       // (t+1,n): Shamir shares, seeds per (n-t+1)-subset
  kTNNaive,  // (t+1,n): one (n,n) instance per (t+1)-subset
};

std::string_view SchemeName(Scheme s);
// Accepts "nn", "tn", "tn-naive"; throws kInvalidArgument.
Scheme ParseScheme(std::string_view name);

// Sorted agent indices.
using GroupId = std::vector<std::uint32_t>;
// Canonical lexicographic order.
using GroupTable = std::vector<GroupId>;

// All k-subsets of {1..n} in lexicographic order.
GroupTable EnumerateSubsets(std::size_t n, std::size_t k);

// Validates (n, t) for the scheme: nn needs n >= 2; the threshold schemes
// need n > 2t >= 2 (kThresholdViolation).
void ValidateSchemeParams(Scheme scheme, std::size_t n, std::size_t t);

// Seed-sharing groups: all pairs for nn, all (n-t+1)-subsets for tn. For
// tn-naive this is the table of (t+1)-subsets, one independent (n,n)
// instance each; seed groups are the pairs inside an instance.
GroupTable EnumerateGroups(std::size_t n, Scheme scheme, std::size_t t);

// Public coefficient of b^T in agent i's refresh term.
FieldElement GroupWeight(Scheme scheme, const GroupId& group, std::size_t n,
                         std::size_t t, std::uint32_t i, const Field& field);

struct GroupSeed {
  GroupId group;
  Seed seed;
  FieldElement weight;

  friend bool operator==(const GroupSeed&, const GroupSeed&) = default;
};

// A label vector with the seeds that refresh it. nn and tn agents hold a
// single instance spanning all agents; tn-naive agents hold one per owned
// (t+1)-subset.
struct LabelInstance {
  GroupId members;
  std::vector<FieldElement> labels;
  std::vector<GroupSeed> seeds;

  friend bool operator==(const LabelInstance&, const LabelInstance&) = default;
};

struct AgentState {
  Scheme scheme;
  std::uint32_t index;
  std::uint32_t n;
  std::uint32_t t;  // 0 for nn
  Field field;
  std::shared_ptr<const Automaton> automaton;
  std::vector<LabelInstance> instances;
  std::uint64_t tick = 0;

  std::size_t SeedCount() const;
  std::size_t LabelCount() const;
  const LabelInstance& Instance(const GroupId& members) const;

  friend bool operator==(const AgentState& a, const AgentState& b);
};

// New label j = sum of labels k with mu(s_k, symbol) = s_j; 0 for states
// with no predecessor. Throws kUnknownSymbol.
std::vector<FieldElement> TransitionSum(std::span<const FieldElement> labels,
                                        const Automaton& automaton,
                                        std::string_view symbol,
                                        const Field& field);

struct TickOptions {
  // Off only for deliberately broken schemes used as test power checks.
  bool rerandomize = true;
};

// Refresh terms R_1..R_m added in one tick, per instance.
struct TickEffect {
  std::vector<std::vector<FieldElement>> refresh;
};

// Refresh half of a tick: for each owned group in canonical order, expand
// the seed, overwrite it with its successor and (if `apply`) add
// weight * b_j to label j. Leaves the tick counter alone.
TickEffect RefreshLabels(AgentState& st, const Prg& prg = ReferencePrg(),
                         bool apply = true);

// Runs one clock tick in place. Either the whole update is applied or, on
// an exception, `st` is unchanged.
TickEffect ApplyTick(AgentState& st, const TickInput& input,
                     const Prg& prg = ReferencePrg(), TickOptions opts = {});

AgentState AgentTick(AgentState st, const TickInput& input,
                     const Prg& prg = ReferencePrg());

// An agent's memory at a tick boundary, as an adversary would read it.
// Seeds are the current ones only; earlier seeds were overwritten.
struct Snapshot {
  AgentState state;
  std::uint64_t captured_at;

  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

Snapshot TakeSnapshot(const AgentState& st);

// Agent state file. Versioned key-value text:
//
//   pfsa-agent-state v1
//   scheme nn|tn|tn-naive
//   n <n>
//   t <t>
//   i <index>
//   modulus <p>
//   tick <20-digit zero-padded decimal>
//   instance <i1,i2,...>        (one block per instance)
//   labels <hex,hex,...>
//   T=<i1,i2,...>:seed=<32 hex>
//   end
//
// Every field is fixed width, so the size of a file does not change as the
// tick counter advances.
std::string WriteAgentState(const AgentState& st);
// Throws kStateFileCorrupt on any structural or consistency error.
AgentState ReadAgentState(std::string_view text,
                          std::shared_ptr<const Automaton> automaton);

}  // namespace pfsa

#endif  // PFSA_PROTOCOL_H_
