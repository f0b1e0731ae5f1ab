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

#include "pfsa/protocol.h"

#include <algorithm>
#include <cstdio>
#include <optional>

#include "pfsa/error.h"
#include "pfsa/sharing.h"
#include "pfsa/text.h"

namespace pfsa {
namespace {

bool Contains(const GroupId& g, std::uint32_t i) {
  return std::binary_search(g.begin(), g.end(), i);
}

std::string JoinIndices(const GroupId& g) {
  std::string out;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(g[k]);
  }
  return out;
}

GroupId ParseIndices(std::string_view s) {
  GroupId g;
  for (auto tok : Split(s, ',')) {
    g.push_back(static_cast<std::uint32_t>(ParseUint(tok)));
  }
  return g;
}

// Seed groups an agent must hold inside one instance.
GroupTable ExpectedSeedGroups(Scheme scheme, const GroupId& members,
                              std::size_t n, std::size_t t, std::uint32_t i) {
  GroupTable all;
  if (scheme == Scheme::kTN) {
    all = EnumerateSubsets(n, n - t + 1);
  } else {
    // Pairs among the instance members.
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        all.push_back({members[a], members[b]});
      }
    }
  }
  GroupTable owned;
  for (auto& g : all) {
    if (Contains(g, i)) owned.push_back(std::move(g));
  }
  return owned;
}

}  // namespace

std::string_view SchemeName(Scheme s) {
  switch (s) {
    case Scheme::kNN: return "nn";
    case Scheme::kTN: return "tn";
    case Scheme::kTNNaive: return "tn-naive";
  }
  return "?";
}

Scheme ParseScheme(std::string_view name) {
  if (name == "nn") return Scheme::kNN;
  if (name == "tn") return Scheme::kTN;
  if (name == "tn-naive") return Scheme::kTNNaive;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown scheme '" + std::string(name) + "'");
}

GroupTable EnumerateSubsets(std::size_t n, std::size_t k) {
  GroupTable out;
  if (k > n) return out;
  GroupId cur(k);
  for (std::size_t a = 0; a < k; ++a) cur[a] = static_cast<std::uint32_t>(a + 1);
  while (true) {
    out.push_back(cur);
    std::size_t pos = k;
    while (pos > 0 && cur[pos - 1] == n - k + pos) --pos;
    if (pos == 0) break;
    ++cur[pos - 1];
    for (std::size_t a = pos; a < k; ++a) cur[a] = cur[a - 1] + 1;
  }
  return out;
}

void ValidateSchemeParams(Scheme scheme, std::size_t n, std::size_t t) {
  if (scheme == Scheme::kNN) {
    if (n < 2) throw Error(ErrorCode::kInvalidArgument, "nn needs n >= 2");
    return;
  }
  if (t < 1 || n <= 2 * t) {
    throw Error(ErrorCode::kThresholdViolation,
                "threshold schemes need n > 2t >= 2, got n = " +
                    std::to_string(n) + ", t = " + std::to_string(t));
  }
}

GroupTable EnumerateGroups(std::size_t n, Scheme scheme, std::size_t t) {
  ValidateSchemeParams(scheme, n, t);
  switch (scheme) {
    case Scheme::kNN: return EnumerateSubsets(n, 2);
    case Scheme::kTN: return EnumerateSubsets(n, n - t + 1);
    case Scheme::kTNNaive: return EnumerateSubsets(n, t + 1);
  }
  return {};
}

FieldElement GroupWeight(Scheme scheme, const GroupId& group, std::size_t n,
                         std::size_t t, std::uint32_t i, const Field& field) {
  if (scheme == Scheme::kTN) {
    return GroupZeroPolyWeight(group, t, n, i, field);
  }
  return field.one();
}

std::size_t AgentState::SeedCount() const {
  std::size_t total = 0;
  for (const auto& inst : instances) total += inst.seeds.size();
  return total;
}

std::size_t AgentState::LabelCount() const {
  std::size_t total = 0;
  for (const auto& inst : instances) total += inst.labels.size();
  return total;
}

const LabelInstance& AgentState::Instance(const GroupId& members) const {
  for (const auto& inst : instances) {
    if (inst.members == members) return inst;
  }
  throw Error(ErrorCode::kAgentNotInGroup,
              "agent " + std::to_string(index) + " holds no instance {" +
                  JoinIndices(members) + "}");
}

bool operator==(const AgentState& a, const AgentState& b) {
  bool same_automaton = a.automaton == b.automaton ||
                        (a.automaton && b.automaton && *a.automaton == *b.automaton);
  return a.scheme == b.scheme && a.index == b.index && a.n == b.n &&
         a.t == b.t && a.field == b.field && same_automaton &&
         a.instances == b.instances && a.tick == b.tick;
}

std::vector<FieldElement> TransitionSum(std::span<const FieldElement> labels,
                                        const Automaton& automaton,
                                        std::string_view symbol,
                                        const Field& field) {
  const std::size_t sym = automaton.SymbolIndex(symbol);
  std::vector<FieldElement> out(labels.size(), field.zero());
  for (std::uint32_t k = 1; k <= labels.size(); ++k) {
    StateIndex to = automaton.StepIndex({k}, sym);
    out[to.value - 1] = field.add(out[to.value - 1], labels[k - 1]);
  }
  return out;
}

TickEffect RefreshLabels(AgentState& st, const Prg& prg, bool apply) {
  const Field& f = st.field;
  const std::size_t m = st.automaton->num_states();
  TickEffect effect;
  effect.refresh.reserve(st.instances.size());
  for (auto& inst : st.instances) {
    std::vector<FieldElement> refresh(m, f.zero());
    for (auto& gs : inst.seeds) {
      Expansion e = prg.Expand(gs.seed, m, f);
      gs.seed = e.next_seed;
      for (std::size_t j = 0; j < m; ++j) {
        refresh[j] = f.add(refresh[j], f.mul(gs.weight, e.elements[j]));
      }
    }
    if (apply) {
      for (std::size_t j = 0; j < m; ++j) {
        inst.labels[j] = f.add(inst.labels[j], refresh[j]);
      }
    }
    effect.refresh.push_back(std::move(refresh));
  }
  return effect;
}

TickEffect ApplyTick(AgentState& st, const TickInput& input, const Prg& prg,
                     TickOptions opts) {
  AgentState next = st;
  if (input.symbol) {
    for (auto& inst : next.instances) {
      inst.labels =
          TransitionSum(inst.labels, *next.automaton, *input.symbol, next.field);
    }
  }
  TickEffect effect = RefreshLabels(next, prg, opts.rerandomize);
  ++next.tick;
  st = std::move(next);
  return effect;
}

AgentState AgentTick(AgentState st, const TickInput& input, const Prg& prg) {
  ApplyTick(st, input, prg);
  return st;
}

Snapshot TakeSnapshot(const AgentState& st) { return {st, st.tick}; }

std::string WriteAgentState(const AgentState& st) {
  std::string out = "pfsa-agent-state v1\n";
  out += "scheme " + std::string(SchemeName(st.scheme)) + "\n";
  out += "n " + std::to_string(st.n) + "\n";
  out += "t " + std::to_string(st.t) + "\n";
  out += "i " + std::to_string(st.index) + "\n";
  out += "modulus " + std::to_string(st.field.modulus()) + "\n";
  char tick[32];
  std::snprintf(tick, sizeof(tick), "%020llu",
                static_cast<unsigned long long>(st.tick));
  out += "tick " + std::string(tick) + "\n";
  for (const auto& inst : st.instances) {
    out += "instance " + JoinIndices(inst.members) + "\n";
    out += "labels ";
    for (std::size_t j = 0; j < inst.labels.size(); ++j) {
      if (j) out += ',';
      out += st.field.to_hex(inst.labels[j]);
    }
    out += "\n";
    for (const auto& gs : inst.seeds) {
      out += "T=" + JoinIndices(gs.group) + ":seed=" + gs.seed.ToHex() + "\n";
    }
  }
  out += "end\n";
  return out;
}

AgentState ReadAgentState(std::string_view text,
                          std::shared_ptr<const Automaton> automaton) {
  auto corrupt = [](const std::string& why) {
    return Error(ErrorCode::kStateFileCorrupt, why);
  };
  try {
    auto lines = SplitLines(text);
    std::size_t pos = 0;
    auto next_line = [&]() -> std::string_view {
      while (pos < lines.size() && lines[pos].empty()) ++pos;
      if (pos == lines.size()) throw corrupt("unexpected end of file");
      return lines[pos++];
    };
    auto keyed = [&](std::string_view key) -> std::string_view {
      auto toks = SplitWords(next_line());
      if (toks.size() != 2 || toks[0] != key) {
        throw corrupt("expected '" + std::string(key) + " <value>'");
      }
      return toks[1];
    };
    if (next_line() != "pfsa-agent-state v1") throw corrupt("bad header");
    const Scheme scheme = ParseScheme(keyed("scheme"));
    const auto n = static_cast<std::uint32_t>(ParseUint(keyed("n")));
    const auto t = static_cast<std::uint32_t>(ParseUint(keyed("t")));
    const auto i = static_cast<std::uint32_t>(ParseUint(keyed("i")));
    const Field field = Field::Make(ParseUint(keyed("modulus")));
    auto tick_str = keyed("tick");
    if (tick_str.size() != 20) throw corrupt("tick must be 20 digits");
    const std::uint64_t tick = ParseUint(tick_str);

    ValidateSchemeParams(scheme, n, t);
    if (scheme == Scheme::kNN && t != 0) throw corrupt("nn state with t != 0");
    if (i < 1 || i > n) throw corrupt("agent index out of range");
    if ((scheme == Scheme::kTN) == field.is_binary() ||
        (scheme == Scheme::kTN && field.modulus() <= n)) {
      throw corrupt("modulus does not fit scheme");
    }

    const std::size_t m = automaton->num_states();
    AgentState st{scheme, i, n, t, field, std::move(automaton), {}, tick};

    GroupTable expected_instances;
    if (scheme == Scheme::kTNNaive) {
      for (auto& g : EnumerateSubsets(n, t + 1)) {
        if (Contains(g, i)) expected_instances.push_back(std::move(g));
      }
    } else {
      expected_instances.push_back(EnumerateSubsets(n, n).front());
    }

    for (const auto& members : expected_instances) {
      if (ParseIndices(keyed("instance")) != members) {
        throw corrupt("unexpected instance block");
      }
      LabelInstance inst{members, {}, {}};
      auto label_toks = Split(keyed("labels"), ',');
      if (label_toks.size() != m) {
        throw corrupt("expected " + std::to_string(m) + " labels");
      }
      for (auto tok : label_toks) inst.labels.push_back(field.from_hex(tok));
      for (auto& group : ExpectedSeedGroups(scheme, members, n, t, i)) {
        std::string_view line = next_line();
        if (!line.starts_with("T=")) throw corrupt("expected seed line");
        auto colon = line.find(":seed=");
        if (colon == std::string_view::npos) throw corrupt("bad seed line");
        if (ParseIndices(line.substr(2, colon - 2)) != group) {
          throw corrupt("unexpected seed group");
        }
        Seed seed = Seed::FromHex(line.substr(colon + 6));
        FieldElement w = GroupWeight(scheme, group, n, t, i, field);
        inst.seeds.push_back({std::move(group), seed, w});
      }
      st.instances.push_back(std::move(inst));
    }
    if (next_line() != "end") throw corrupt("missing 'end'");
    return st;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kStateFileCorrupt) throw;
    throw corrupt(e.what());
  }
}

}  // namespace pfsa
