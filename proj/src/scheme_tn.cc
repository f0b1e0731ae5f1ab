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

#include "pfsa/scheme_tn.h"

#include <algorithm>
#include <string>

#include "pfsa/error.h"
#include "pfsa/scheme_nn.h"
#include "pfsa/sharing.h"

namespace pfsa {
namespace {

void RequireInitInRange(const Automaton& a, StateIndex init) {
  if (init.value < 1 || init.value > a.num_states()) {
    throw Error(ErrorCode::kInvalidArgument, "initial state out of range");
  }
}

bool Contains(const GroupId& g, std::uint32_t i) {
  return std::binary_search(g.begin(), g.end(), i);
}

}  // namespace

Deployment DealerInitTN(std::shared_ptr<const Automaton> automaton,
                        std::size_t n, std::size_t t, const Field& field,
                        StateIndex init, RandomSource& rng) {
  ValidateSchemeParams(Scheme::kTN, n, t);
  if (field.modulus() <= n) {
    throw Error(ErrorCode::kFieldTooSmall,
                "modulus " + std::to_string(field.modulus()) +
                    " must exceed n = " + std::to_string(n));
  }
  RequireInitInRange(*automaton, init);
  const std::size_t m = automaton->num_states();
  const GroupId everyone = EnumerateSubsets(n, n).front();

  std::vector<AgentState> agents;
  for (std::uint32_t i = 1; i <= n; ++i) {
    agents.push_back({Scheme::kTN, i, static_cast<std::uint32_t>(n),
                      static_cast<std::uint32_t>(t), field, automaton,
                      {LabelInstance{everyone, std::vector<FieldElement>(m), {}}},
                      0});
  }
  for (std::uint32_t j = 1; j <= m; ++j) {
    FieldElement secret = j == init.value ? field.one() : field.zero();
    ShareVector v = ShamirShare(secret, t, n, field, rng);
    for (const auto& s : v.shares) {
      agents[s.agent - 1].instances[0].labels[j - 1] = s.value;
    }
  }
  for (const auto& group : EnumerateSubsets(n, n - t + 1)) {
    Seed seed = rng.NewSeed();
    for (std::uint32_t member : group) {
      agents[member - 1].instances[0].seeds.push_back(
          {group, seed, GroupZeroPolyWeight(group, t, n, member, field)});
    }
  }
  return Deployment{Scheme::kTN, n, t, field, std::move(automaton), agents,
                    {init, agents}};
}

std::vector<FieldElement> RerandomizeTN(AgentState& st, const Prg& prg) {
  if (st.scheme != Scheme::kTN) {
    throw Error(ErrorCode::kInvalidArgument, "not a tn agent");
  }
  return RefreshLabels(st, prg).refresh.front();
}

IndexedLabels LabelsOf(const AgentState& st) {
  return {st.index, st.instances.front().labels};
}

std::vector<FieldElement> SecretsTN(std::span<const IndexedLabels> shares,
                                    std::size_t t, const Field& field,
                                    bool strict) {
  std::vector<std::uint32_t> agents;
  for (const auto& s : shares) agents.push_back(s.agent);
  std::sort(agents.begin(), agents.end());
  if (std::adjacent_find(agents.begin(), agents.end()) != agents.end()) {
    throw Error(ErrorCode::kDuplicateX, "agent supplied twice");
  }
  if (shares.size() < t + 1) {
    throw Error(ErrorCode::kNotEnoughShares,
                "need t + 1 = " + std::to_string(t + 1) + " agents, got " +
                    std::to_string(shares.size()));
  }
  const std::size_t m = shares.front().labels.size();
  std::vector<FieldElement> secrets(m);
  std::vector<Point> points;
  for (std::size_t j = 0; j < m; ++j) {
    points.clear();
    for (const auto& s : shares) {
      if (s.labels.size() != m) {
        throw Error(ErrorCode::kInvalidArgument, "label lists differ in length");
      }
      points.push_back({{s.agent}, s.labels[j]});
    }
    std::span<const Point> basis = std::span(points).first(t + 1);
    secrets[j] = LagrangeAt(basis, field.zero(), field);
    if (strict && !OnPolynomialOfDegree(points, t, field)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "labels of state " + std::to_string(j + 1) +
                      " are not on one degree-t polynomial");
    }
  }
  return secrets;
}

StateIndex ReconstructTN(std::span<const IndexedLabels> shares, std::size_t t,
                         const Field& field, bool strict) {
  return DecodeOneHot(SecretsTN(shares, t, field, strict));
}

Deployment DealerInitTNNaive(std::shared_ptr<const Automaton> automaton,
                             std::size_t n, std::size_t t, StateIndex init,
                             RandomSource& rng) {
  ValidateSchemeParams(Scheme::kTNNaive, n, t);
  RequireInitInRange(*automaton, init);
  const std::size_t m = automaton->num_states();
  const Field gf2 = Field::Make(2);

  std::vector<AgentState> agents;
  for (std::uint32_t i = 1; i <= n; ++i) {
    agents.push_back({Scheme::kTNNaive, i, static_cast<std::uint32_t>(n),
                      static_cast<std::uint32_t>(t), gf2, automaton, {}, 0});
  }
  for (const auto& subset : EnumerateSubsets(n, t + 1)) {
    for (std::uint32_t member : subset) {
      agents[member - 1].instances.push_back(
          {subset, std::vector<FieldElement>(m), {}});
    }
    auto instance_of = [&](std::uint32_t member) -> LabelInstance& {
      return agents[member - 1].instances.back();
    };
    for (std::uint32_t j = 1; j <= m; ++j) {
      ShareVector v = AdditiveShareBit(j == init.value, subset.size(), rng);
      for (const auto& s : v.shares) {
        instance_of(subset[s.agent - 1]).labels[j - 1] = s.value;
      }
    }
    for (std::size_t a = 0; a < subset.size(); ++a) {
      for (std::size_t b = a + 1; b < subset.size(); ++b) {
        GroupId pair{subset[a], subset[b]};
        Seed seed = rng.NewSeed();
        instance_of(subset[a]).seeds.push_back({pair, seed, gf2.one()});
        instance_of(subset[b]).seeds.push_back({pair, seed, gf2.one()});
      }
    }
  }
  return Deployment{Scheme::kTNNaive, n, t, gf2, std::move(automaton), agents,
                    {init, agents}};
}

StateIndex ReconstructTNNaiveSubset(std::span<const AgentState> responders,
                                    const GroupId& subset) {
  std::vector<std::vector<FieldElement>> lists;
  for (std::uint32_t member : subset) {
    auto it = std::find_if(responders.begin(), responders.end(),
                           [&](const AgentState& a) { return a.index == member; });
    if (it == responders.end()) {
      throw Error(ErrorCode::kNoFullSubset,
                  "agent " + std::to_string(member) + " did not respond");
    }
    lists.push_back(it->Instance(subset).labels);
  }
  return ReconstructNN(lists, subset.size());
}

StateIndex ReconstructTNNaive(std::span<const AgentState> responders,
                              std::size_t t) {
  if (responders.empty()) {
    throw Error(ErrorCode::kNoFullSubset, "no responders");
  }
  const std::size_t n = responders.front().n;
  GroupId present;
  for (const auto& a : responders) present.push_back(a.index);
  std::sort(present.begin(), present.end());
  for (const auto& subset : EnumerateSubsets(n, t + 1)) {
    if (std::all_of(subset.begin(), subset.end(),
                    [&](std::uint32_t i) { return Contains(present, i); })) {
      return ReconstructTNNaiveSubset(responders, subset);
    }
  }
  throw Error(ErrorCode::kNoFullSubset,
              "no (t+1)-subset of responders is complete");
}

}  // namespace pfsa
