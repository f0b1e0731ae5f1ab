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

// (n,n) scheme: each state's label is an XOR share of 1 (active state) or
// 0, refreshed every tick with pairwise-seed PRG output. Every pair's
// output is added by exactly its two members, so refreshes cancel.

#ifndef PFSA_SCHEME_NN_H_
#define PFSA_SCHEME_NN_H_

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "pfsa/deployment.h"
#include "pfsa/random.h"

namespace pfsa {

// XOR-shares the indicator of `init` for every state and gives each pair
// of agents a fresh seed. Requires n >= 2.
Deployment DealerInitNN(std::shared_ptr<const Automaton> automaton,
                        std::size_t n, StateIndex init, RandomSource& rng);

// Refresh step alone: for each owned pair, expand its seed, XOR b_j into
// label j, and replace the seed. Returns R_1..R_m. Does not advance tick.
std::vector<FieldElement> RerandomizeNN(AgentState& st,
                                        const Prg& prg = ReferencePrg());

// `label_lists` holds every agent's labels. Throws kMissingShares when
// fewer than n lists are given, kInvalidOneHot when the XOR sums are not
// a one-hot vector.
StateIndex ReconstructNN(std::span<const std::vector<FieldElement>> label_lists,
                         std::size_t n);

// Convenience over full agent states (nn scheme only).
StateIndex ReconstructNN(std::span<const AgentState> agents, std::size_t n);

// Per-state XOR sums.
std::vector<FieldElement> XorSecrets(
    std::span<const std::vector<FieldElement>> label_lists);

}  // namespace pfsa

#endif  // PFSA_SCHEME_NN_H_
