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

#include "pfsa/scheme_nn.h"

#include <optional>
#include <string>

#include "pfsa/error.h"
#include "pfsa/sharing.h"

namespace pfsa {

StateIndex DecodeOneHot(std::span<const FieldElement> secrets) {
  std::optional<std::uint32_t> hot;
  for (std::uint32_t j = 0; j < secrets.size(); ++j) {
    if (secrets[j].value == 0) continue;
    if (secrets[j].value != 1 || hot) {
      throw Error(ErrorCode::kInvalidOneHot,
                  "reconstructed secrets are not one-hot (state " +
                      std::to_string(j + 1) + ")");
    }
    hot = j + 1;
  }
  if (!hot) {
    throw Error(ErrorCode::kInvalidOneHot, "no state reconstructs to 1");
  }
  return {*hot};
}

Deployment DealerInitNN(std::shared_ptr<const Automaton> automaton,
                        std::size_t n, StateIndex init, RandomSource& rng) {
  ValidateSchemeParams(Scheme::kNN, n, 0);
  const std::size_t m = automaton->num_states();
  if (init.value < 1 || init.value > m) {
    throw Error(ErrorCode::kInvalidArgument, "initial state out of range");
  }
  const Field gf2 = Field::Make(2);
  const GroupId everyone = EnumerateSubsets(n, n).front();

  std::vector<AgentState> agents;
  for (std::uint32_t i = 1; i <= n; ++i) {
    agents.push_back({Scheme::kNN, i, static_cast<std::uint32_t>(n), 0, gf2,
                      automaton,
                      {LabelInstance{everyone, std::vector<FieldElement>(m), {}}},
                      0});
  }
  for (std::uint32_t j = 1; j <= m; ++j) {
    ShareVector v = AdditiveShareBit(j == init.value, n, rng);
    for (const auto& s : v.shares) {
      agents[s.agent - 1].instances[0].labels[j - 1] = s.value;
    }
  }
  for (const auto& pair : EnumerateSubsets(n, 2)) {
    Seed seed = rng.NewSeed();
    for (std::uint32_t member : pair) {
      agents[member - 1].instances[0].seeds.push_back(
          {pair, seed, gf2.one()});
    }
  }
  Deployment d{Scheme::kNN, n, 0, gf2, std::move(automaton), agents,
               {init, agents}};
  return d;
}

std::vector<FieldElement> RerandomizeNN(AgentState& st, const Prg& prg) {
  if (st.scheme != Scheme::kNN) {
    throw Error(ErrorCode::kInvalidArgument, "not an nn agent");
  }
  return RefreshLabels(st, prg).refresh.front();
}

std::vector<FieldElement> XorSecrets(
    std::span<const std::vector<FieldElement>> label_lists) {
  std::vector<FieldElement> out(label_lists.empty() ? 0 : label_lists[0].size());
  for (const auto& labels : label_lists) {
    if (labels.size() != out.size()) {
      throw Error(ErrorCode::kInvalidArgument, "label lists differ in length");
    }
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j].value ^= labels[j].value & 1;
    }
  }
  return out;
}

StateIndex ReconstructNN(std::span<const std::vector<FieldElement>> label_lists,
                         std::size_t n) {
  if (label_lists.size() < n) {
    throw Error(ErrorCode::kMissingShares,
                "(n,n) reconstruction needs all " + std::to_string(n) +
                    " agents, got " + std::to_string(label_lists.size()));
  }
  if (label_lists.size() > n) {
    throw Error(ErrorCode::kInvalidArgument, "more label lists than agents");
  }
  return DecodeOneHot(XorSecrets(label_lists));
}

StateIndex ReconstructNN(std::span<const AgentState> agents, std::size_t n) {
  std::vector<bool> seen(n + 1, false);
  std::vector<std::vector<FieldElement>> lists;
  for (const auto& a : agents) {
    if (a.scheme != Scheme::kNN || a.n != n || a.index < 1 || a.index > n ||
        seen[a.index]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "agent states do not form one nn deployment");
    }
    seen[a.index] = true;
    lists.push_back(a.instances.front().labels);
  }
  return ReconstructNN(lists, n);
}

}  // namespace pfsa
