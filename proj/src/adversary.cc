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

#include "pfsa/adversary.h"

#include <algorithm>
#include <set>

#include "pfsa/error.h"
#include "pfsa/text.h"

namespace pfsa {
namespace {

bool Contains(const GroupId& g, std::uint32_t i) {
  return std::binary_search(g.begin(), g.end(), i);
}

// Seed groups per instance for the given scheme, in canonical order.
std::vector<std::pair<GroupId, GroupTable>> InstanceGroups(Scheme scheme,
                                                           std::size_t n,
                                                           std::size_t t) {
  std::vector<std::pair<GroupId, GroupTable>> out;
  switch (scheme) {
    case Scheme::kNN:
      out.push_back({EnumerateSubsets(n, n).front(), EnumerateSubsets(n, 2)});
      break;
    case Scheme::kTN:
      out.push_back(
          {EnumerateSubsets(n, n).front(), EnumerateSubsets(n, n - t + 1)});
      break;
    case Scheme::kTNNaive:
      for (auto& subset : EnumerateSubsets(n, t + 1)) {
        GroupTable pairs;
        for (const auto& p : EnumerateSubsets(subset.size(), 2)) {
          pairs.push_back({subset[p[0] - 1], subset[p[1] - 1]});
        }
        out.push_back({std::move(subset), std::move(pairs)});
      }
      break;
  }
  return out;
}

}  // namespace

std::optional<std::uint64_t> CorruptionTimeline::CorruptedAt(
    std::uint32_t agent) const {
  for (const auto& e : events) {
    if (e.agent == agent) return e.tick;
  }
  return std::nullopt;
}

CorruptionTimeline ParseTimeline(std::string_view text) {
  CorruptionTimeline out;
  std::size_t line_no = 0;
  for (auto raw : SplitLines(text)) {
    ++line_no;
    auto toks = SplitWords(StripComment(raw));
    if (toks.empty()) continue;
    if (toks.size() != 3 || toks[0] != "corrupt") {
      throw Error(ErrorCode::kParseError,
                  "timeline line " + std::to_string(line_no) +
                      ": expected 'corrupt <agent> <tick>'");
    }
    out.events.push_back(
        {static_cast<std::uint32_t>(ParseUint(toks[1])), ParseUint(toks[2])});
  }
  return out;
}

std::string FormatTimeline(const CorruptionTimeline& timeline) {
  std::string out;
  for (const auto& e : timeline.events) {
    out += "corrupt " + std::to_string(e.agent) + " " +
           std::to_string(e.tick) + "\n";
  }
  return out;
}

bool ValidateTimeline(const CorruptionTimeline& timeline, Scheme scheme,
                      std::size_t n, std::size_t t) {
  std::set<std::uint32_t> seen;
  for (std::size_t k = 0; k < timeline.events.size(); ++k) {
    const auto& e = timeline.events[k];
    if (e.agent < 1 || e.agent > n || !seen.insert(e.agent).second) return false;
    if (k > 0 && e.tick < timeline.events[k - 1].tick) return false;
  }
  const std::size_t budget = scheme == Scheme::kNN ? n - 1 : t;
  return timeline.size() <= budget;
}

HypergraphVerdict CheckHypergraph(const GroupTable& groups,
                                  const CorruptionTimeline& timeline) {
  GroupId corrupted;
  for (std::size_t k = 0; k < timeline.events.size(); ++k) {
    const std::uint32_t agent = timeline.events[k].agent;
    bool clean_group = std::any_of(
        groups.begin(), groups.end(), [&](const GroupId& g) {
          return Contains(g, agent) &&
                 std::none_of(corrupted.begin(), corrupted.end(),
                              [&](std::uint32_t c) { return Contains(g, c); });
        });
    if (!clean_group) return {false, k};
    corrupted.push_back(agent);
  }
  return {};
}

bool HypergraphCheck(const GroupTable& groups,
                     const CorruptionTimeline& timeline) {
  return CheckHypergraph(groups, timeline).ok;
}

HypergraphVerdict CheckSchemeHypergraph(Scheme scheme, std::size_t n,
                                        std::size_t t,
                                        const CorruptionTimeline& timeline) {
  HypergraphVerdict worst;
  for (const auto& [members, groups] : InstanceGroups(scheme, n, t)) {
    // Only the corruptions that touch this instance matter to it; map
    // violations back to the global step index.
    CorruptionTimeline local;
    std::vector<std::size_t> global_step;
    for (std::size_t k = 0; k < timeline.events.size(); ++k) {
      if (Contains(members, timeline.events[k].agent)) {
        local.events.push_back(timeline.events[k]);
        global_step.push_back(k);
      }
    }
    HypergraphVerdict v = CheckHypergraph(groups, local);
    if (!v.ok) {
      std::size_t step = global_step[*v.violating_step];
      if (worst.ok || step < *worst.violating_step) worst = {false, step};
    }
  }
  return worst;
}

void CaptureDue(const CorruptionTimeline& timeline, std::uint64_t tick,
                std::span<const AgentState> agents, View& view) {
  for (const auto& e : timeline.events) {
    if (e.tick != tick) continue;
    if (e.agent < 1 || e.agent > agents.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "corrupted agent " + std::to_string(e.agent) + " unknown");
    }
    view.push_back(TakeSnapshot(agents[e.agent - 1]));
  }
}

std::string DumpView(const View& view) {
  std::string out;
  for (const auto& snap : view) {
    out += WriteAgentState(snap.state);
    out += "captured_at " + std::to_string(snap.captured_at) + "\n";
  }
  return out;
}

std::vector<FieldElement> ViewLabels(const View& view) {
  std::vector<FieldElement> out;
  for (const auto& snap : view) {
    for (const auto& inst : snap.state.instances) {
      out.insert(out.end(), inst.labels.begin(), inst.labels.end());
    }
  }
  return out;
}

IntermediateRun::IntermediateRun(std::shared_ptr<const Automaton> automaton,
                                 Scheme scheme, std::size_t n, std::size_t t,
                                 const Field& field,
                                 CorruptionTimeline timeline, RandomSource& rng)
    : timeline_(std::move(timeline)) {
  ValidateSchemeParams(scheme, n, t);
  if ((scheme == Scheme::kTN) == field.is_binary() ||
      field.modulus() <= (scheme == Scheme::kTN ? n : 1)) {
    throw Error(ErrorCode::kFieldTooSmall, "field does not fit the scheme");
  }
  const std::size_t m = automaton->num_states();
  const std::uint32_t stored_t = scheme == Scheme::kNN ? 0 : static_cast<std::uint32_t>(t);
  for (std::uint32_t i = 1; i <= n; ++i) {
    agents_.push_back({scheme, i, static_cast<std::uint32_t>(n), stored_t,
                       field, automaton, {}, 0});
  }
  for (const auto& [members, groups] : InstanceGroups(scheme, n, t)) {
    for (std::uint32_t member : members) {
      agents_[member - 1].instances.push_back(
          {members, std::vector<FieldElement>(m, field.zero()), {}});
    }
    for (const auto& group : groups) {
      Seed seed = rng.NewSeed();
      std::vector<FieldElement> r(m);
      for (auto& v : r) v = rng.Element(field);
      for (std::uint32_t member : group) {
        LabelInstance& inst = agents_[member - 1].instances.back();
        // Unit coefficient on every R^T.
        for (std::size_t j = 0; j < m; ++j) {
          inst.labels[j] = field.add(inst.labels[j], r[j]);
        }
        inst.seeds.push_back(
            {group, seed, GroupWeight(scheme, group, n, t, member, field)});
      }
    }
  }
}

std::optional<std::uint64_t> IntermediateRun::SeedTrigger(
    const GroupId& group) const {
  std::optional<std::uint64_t> first;
  for (std::uint32_t member : group) {
    auto at = timeline_.CorruptedAt(member);
    if (at && (!first || *at < *first)) first = at;
  }
  return first;
}

void IntermediateRun::Tick(const TickInput& input, const Prg& prg) {
  const std::uint64_t r = tick_ + 1;
  std::vector<AgentState> next = agents_;
  for (auto& agent : next) {
    const auto corrupted_at = timeline_.CorruptedAt(agent.index);
    const bool live = corrupted_at && *corrupted_at < r;
    const Field& f = agent.field;
    const std::size_t m = agent.automaton->num_states();
    for (auto& inst : agent.instances) {
      if (live && input.symbol) {
        inst.labels = TransitionSum(inst.labels, *agent.automaton,
                                    *input.symbol, f);
      }
      for (auto& gs : inst.seeds) {
        auto trigger = SeedTrigger(gs.group);
        if (!trigger || *trigger >= r) continue;
        Expansion e = prg.Expand(gs.seed, m, f);
        gs.seed = e.next_seed;
        if (!live) continue;
        for (std::size_t j = 0; j < m; ++j) {
          inst.labels[j] = f.add(inst.labels[j], f.mul(gs.weight, e.elements[j]));
        }
      }
    }
    agent.tick = r;
  }
  agents_ = std::move(next);
  tick_ = r;
}

}  // namespace pfsa
