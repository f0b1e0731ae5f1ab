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

#ifndef PFSA_DEPLOYMENT_H_
#define PFSA_DEPLOYMENT_H_

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "pfsa/automaton.h"
#include "pfsa/field.h"
#include "pfsa/protocol.h"

namespace pfsa {

// What the dealer knew at initialization. Only test and harness code keeps
// this; a real deployment hands out agent states and forgets it.
struct DealerRecord {
  StateIndex init;
  std::vector<AgentState> initial_agents;
};

struct Deployment {
  Scheme scheme;
  std::size_t n;
  std::size_t t;
  Field field;
  std::shared_ptr<const Automaton> automaton;
  std::vector<AgentState> agents;  // agents[i - 1] is agent i
  DealerRecord dealer;
};

// Index of the single 1 in `secrets` (as a 1-based state). Throws
// kInvalidOneHot when zero or several entries are 1, or any entry is
// neither 0 nor 1.
StateIndex DecodeOneHot(std::span<const FieldElement> secrets);

}  // namespace pfsa

#endif  // PFSA_DEPLOYMENT_H_
