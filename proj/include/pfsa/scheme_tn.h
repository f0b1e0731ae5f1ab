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

// (t+1,n) schemes.
//
// The Shamir scheme keeps each state's labels on a degree-t polynomial
// whose constant term is the state indicator. Each (n-t+1)-subset T of
// agents shares a seed; from its output b^T_j every member evaluates the
// degree-t polynomial that is 0 at 0 and at every agent outside T and b^T_j
// at min(T). Summed over all T this is a degree-t polynomial with zero
// constant term, so the refresh never changes the shared secrets.
//
// The naive variant runs an independent (n,n) instance for every
// (t+1)-subset of agents.

#ifndef PFSA_SCHEME_TN_H_
#define PFSA_SCHEME_TN_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "pfsa/deployment.h"
#include "pfsa/random.h"

namespace pfsa {

// Throws kThresholdViolation unless n > 2t >= 2, kFieldTooSmall unless
// modulus > n.
Deployment DealerInitTN(std::shared_ptr<const Automaton> automaton,
                        std::size_t n, std::size_t t, const Field& field,
                        StateIndex init, RandomSource& rng);

// Refresh step alone; returns R_j = P_j(i). Does not advance tick.
std::vector<FieldElement> RerandomizeTN(AgentState& st,
                                        const Prg& prg = ReferencePrg());

struct IndexedLabels {
  std::uint32_t agent;
  std::vector<FieldElement> labels;
};

IndexedLabels LabelsOf(const AgentState& st);

// Interpolates each state's labels at 0 over the first t+1 entries. In
// strict mode every supplied entry must lie on that polynomial
// (kInvalidArgument otherwise). Throws kNotEnoughShares for fewer than
// t+1 distinct agents.
std::vector<FieldElement> SecretsTN(std::span<const IndexedLabels> shares,
                                    std::size_t t, const Field& field,
                                    bool strict = false);

StateIndex ReconstructTN(std::span<const IndexedLabels> shares, std::size_t t,
                         const Field& field, bool strict = false);

// Naive variant over GF(2). Each agent holds C(n-1, t) instances.
Deployment DealerInitTNNaive(std::shared_ptr<const Automaton> automaton,
                             std::size_t n, std::size_t t, StateIndex init,
                             RandomSource& rng);

// Reconstructs from the lexicographically first (t+1)-subset whose members
// all appear in `responders`. Throws kNoFullSubset if there is none.
StateIndex ReconstructTNNaive(std::span<const AgentState> responders,
                              std::size_t t);

// Reconstructs from one specific (t+1)-subset instance.
StateIndex ReconstructTNNaiveSubset(std::span<const AgentState> responders,
                                    const GroupId& subset);

}  // namespace pfsa

#endif  // PFSA_SCHEME_TN_H_
