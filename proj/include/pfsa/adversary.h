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

// Progressive-corruption adversary: which agents are read and when, what
// it sees, and the lazily-updating comparison scheme whose views carry no
// information about the automaton's state.

#ifndef PFSA_ADVERSARY_H_
#define PFSA_ADVERSARY_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pfsa/protocol.h"
#include "pfsa/random.h"

namespace pfsa {

struct Corruption {
  std::uint32_t agent;
  std::uint64_t tick;  // read after this tick's update; 0 = right after init

  friend bool operator==(const Corruption&, const Corruption&) = default;
};

struct CorruptionTimeline {
  std::vector<Corruption> events;

  std::size_t size() const { return events.size(); }
  bool empty() const { return events.empty(); }
  std::uint64_t LastTick() const { return events.empty() ? 0 : events.back().tick; }
  // Tick at which `agent` is corrupted, if it ever is.
  std::optional<std::uint64_t> CorruptedAt(std::uint32_t agent) const;
};

// Timeline file: one `corrupt <agent> <tick>` line per event.
CorruptionTimeline ParseTimeline(std::string_view text);
std::string FormatTimeline(const CorruptionTimeline& timeline);

// Well-formed (ticks non-decreasing, agents in 1..n and distinct) and
// within the scheme's corruption budget: n - 1 for nn, t otherwise.
bool ValidateTimeline(const CorruptionTimeline& timeline, Scheme scheme,
                      std::size_t n, std::size_t t);

struct HypergraphVerdict {
  bool ok = true;
  // 0-based index of the first corruption with no clean group.
  std::optional<std::size_t> violating_step;
};

// For each corruption k, with K the agents corrupted before it, requires a
// group T containing the k-th agent with T disjoint from K.
HypergraphVerdict CheckHypergraph(const GroupTable& groups,
                                  const CorruptionTimeline& timeline);

bool HypergraphCheck(const GroupTable& groups,
                     const CorruptionTimeline& timeline);

// Scheme-level check. For tn-naive the condition must hold inside every
// (t+1)-instance that contains the corrupted agent, over that instance's
// pairwise seed groups.
HypergraphVerdict CheckSchemeHypergraph(Scheme scheme, std::size_t n,
                                        std::size_t t,
                                        const CorruptionTimeline& timeline);

using View = std::vector<Snapshot>;

// Appends snapshots for every event scheduled at `tick`. `agents[i - 1]`
// must be agent i at the barrier after that tick.
void CaptureDue(const CorruptionTimeline& timeline, std::uint64_t tick,
                std::span<const AgentState> agents, View& view);

// Per-snapshot blocks in agent state file format followed by
// `captured_at <tick>`.
std::string DumpView(const View& view);

// Captured labels in snapshot order, flattened.
std::vector<FieldElement> ViewLabels(const View& view);

// Lazily-updating comparison scheme for a fixed timeline.
//
// Initialization draws, per seed group T, a seed and m independent
// uniform values R^T_j; every member starts with label j = sum of R^T_j
// over its groups, and the R values are then dropped. A group's seed stays
// frozen until the first of its members is corrupted, and an agent's
// labels stay frozen until that agent is corrupted; from the following
// tick on both evolve exactly as in the real scheme.
class IntermediateRun {
 public:
  IntermediateRun(std::shared_ptr<const Automaton> automaton, Scheme scheme,
                  std::size_t n, std::size_t t, const Field& field,
                  CorruptionTimeline timeline, RandomSource& rng);

  void Tick(const TickInput& input, const Prg& prg = ReferencePrg());

  std::uint64_t tick() const { return tick_; }
  const std::vector<AgentState>& agents() const { return agents_; }
  const CorruptionTimeline& timeline() const { return timeline_; }

  // First tick after which the seed of `group` evolves, if any.
  std::optional<std::uint64_t> SeedTrigger(const GroupId& group) const;

 private:
  CorruptionTimeline timeline_;
  std::vector<AgentState> agents_;
  std::uint64_t tick_ = 0;
};

}  // namespace pfsa

#endif  // PFSA_ADVERSARY_H_
