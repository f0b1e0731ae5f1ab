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

#include "pfsa/harness.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <thread>

#include <nlohmann/json.hpp>

#include "pfsa/error.h"
#include "pfsa/scheme_nn.h"
#include "pfsa/scheme_tn.h"
#include "pfsa/sharing.h"
#include "pfsa/stats.h"

namespace pfsa {
namespace {

// Where each canonical instance lives: (agent, local instance index).
using InstanceSlots = std::vector<std::vector<std::pair<std::uint32_t, std::size_t>>>;

InstanceSlots MakeInstanceSlots(Scheme scheme, std::size_t n, std::size_t t) {
  InstanceSlots slots;
  if (scheme != Scheme::kTNNaive) {
    slots.emplace_back();
    for (std::uint32_t i = 1; i <= n; ++i) slots.back().push_back({i, 0});
    return slots;
  }
  std::vector<std::size_t> next_local(n + 1, 0);
  for (const auto& subset : EnumerateSubsets(n, t + 1)) {
    slots.emplace_back();
    for (std::uint32_t member : subset) {
      slots.back().push_back({member, next_local[member]++});
    }
  }
  return slots;
}

std::vector<std::vector<FieldElement>> ComputeSecrets(
    const SimulationConfig& cfg, const Field& field, const InstanceSlots& slots,
    const LabelMatrix& labels) {
  std::vector<std::vector<FieldElement>> out;
  const std::size_t m = cfg.automaton->num_states();
  for (const auto& slot : slots) {
    std::vector<FieldElement> secrets(m, field.zero());
    if (cfg.scheme == Scheme::kTN) {
      std::vector<Point> pts(slot.size());
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < slot.size(); ++k) {
          auto [agent, local] = slot[k];
          pts[k] = {{agent}, labels[agent - 1][local][j]};
        }
        secrets[j] = LagrangeAt(pts, field.zero(), field);
      }
    } else {
      for (auto [agent, local] : slot) {
        for (std::size_t j = 0; j < m; ++j) {
          secrets[j] = field.add(secrets[j], labels[agent - 1][local][j]);
        }
      }
    }
    out.push_back(std::move(secrets));
  }
  return out;
}

bool SeedsInLockstep(std::span<const AgentState> agents) {
  std::map<std::pair<GroupId, GroupId>, Seed> seen;
  for (const auto& a : agents) {
    for (const auto& inst : a.instances) {
      for (const auto& gs : inst.seeds) {
        auto [it, fresh] = seen.try_emplace({inst.members, gs.group}, gs.seed);
        if (!fresh && it->second != gs.seed) return false;
      }
    }
  }
  return true;
}

LabelMatrix CollectLabels(std::span<const AgentState> agents) {
  LabelMatrix out;
  for (const auto& a : agents) {
    out.emplace_back();
    for (const auto& inst : a.instances) out.back().push_back(inst.labels);
  }
  return out;
}

std::string StateMismatch(std::uint64_t tick, const std::string& what) {
  return "tick " + std::to_string(tick) + ": " + what;
}

// Bucket index and bucket count for coordinate binning.
std::size_t BinCount(const Field& f) {
  return f.modulus() <= 16 ? f.modulus() : 16;
}

std::size_t BinOf(FieldElement v, const Field& f) {
  if (f.modulus() <= 16) return v.value;
  return static_cast<std::size_t>(
      (static_cast<unsigned __int128>(v.value) * 16) / f.modulus());
}

std::vector<double> BinProbabilities(const Field& f) {
  const std::size_t bins = BinCount(f);
  std::vector<double> probs(bins);
  const auto p = static_cast<unsigned __int128>(f.modulus());
  auto ceil_div = [](unsigned __int128 a, unsigned __int128 b) {
    return (a + b - 1) / b;
  };
  for (std::size_t b = 0; b < bins; ++b) {
    unsigned __int128 lo = f.modulus() <= 16 ? b : ceil_div(b * p, 16);
    unsigned __int128 hi = f.modulus() <= 16 ? b + 1 : ceil_div((b + 1) * p, 16);
    probs[b] = static_cast<double>(hi - lo) / static_cast<double>(f.modulus());
  }
  return probs;
}

// Number of cells of a joint table over `dims` binned coordinates, or 0
// if it would exceed `limit`.
std::size_t JointCells(std::size_t bins, std::size_t dims, std::size_t limit) {
  std::size_t cells = 1;
  for (std::size_t d = 0; d < dims; ++d) {
    if (cells > limit / bins) return 0;
    cells *= bins;
  }
  return cells;
}

std::vector<std::uint64_t> Histogram(
    std::span<const std::vector<FieldElement>> samples,
    std::span<const std::size_t> coords, std::size_t bins, std::size_t cells,
    const Field& f) {
  std::vector<std::uint64_t> h(cells, 0);
  for (const auto& s : samples) {
    std::size_t cell = 0;
    for (std::size_t c : coords) cell = cell * bins + BinOf(s[c], f);
    ++h[cell];
  }
  return h;
}

void RequireSamples(std::span<const std::vector<FieldElement>> samples) {
  if (samples.size() < kMinStatSamples) {
    throw Error(ErrorCode::kInsufficientSamples,
                std::to_string(samples.size()) + " samples, need at least " +
                    std::to_string(kMinStatSamples));
  }
  for (const auto& s : samples) {
    if (s.size() != samples.front().size()) {
      throw Error(ErrorCode::kInvalidArgument, "views differ in shape");
    }
  }
}

void Absorb(StatReport& report, std::vector<double>& p_values,
            const ChiSquareResult& r) {
  p_values.push_back(r.p_value);
  if (p_values.size() == 1 || r.p_value <= report.p_value) {
    report.statistic = r.statistic;
    report.dof = r.dof;
    report.p_value = r.p_value;
  }
}

}  // namespace

void ValidateConfig(const SimulationConfig& cfg) {
  if (!cfg.automaton) throw Error(ErrorCode::kInvalidArgument, "no automaton");
  ValidateSchemeParams(cfg.scheme, cfg.n, cfg.t);
  const Field field = Field::Make(cfg.modulus);
  if (cfg.scheme == Scheme::kTN) {
    if (field.modulus() <= cfg.n) {
      throw Error(ErrorCode::kFieldTooSmall, "modulus must exceed n");
    }
  } else if (!field.is_binary()) {
    throw Error(ErrorCode::kInvalidArgument, "XOR schemes run over GF(2)");
  }
  if (cfg.init.value < 1 || cfg.init.value > cfg.automaton->num_states()) {
    throw Error(ErrorCode::kInvalidArgument, "initial state out of range");
  }
  for (const auto& tick : cfg.schedule) {
    if (tick.symbol) cfg.automaton->SymbolIndex(*tick.symbol);
  }
  for (const auto& e : cfg.timeline.events) {
    if (e.tick > cfg.schedule.size()) {
      throw Error(ErrorCode::kTickOutOfRange,
                  "corruption at tick " + std::to_string(e.tick) +
                      " beyond horizon " + std::to_string(cfg.schedule.size()));
    }
    if (e.agent < 1 || e.agent > cfg.n) {
      throw Error(ErrorCode::kInvalidArgument, "corrupted agent out of range");
    }
  }
}

Deployment InitDeployment(const SimulationConfig& cfg, RandomSource& rng) {
  switch (cfg.scheme) {
    case Scheme::kNN:
      return DealerInitNN(cfg.automaton, cfg.n, cfg.init, rng);
    case Scheme::kTN:
      return DealerInitTN(cfg.automaton, cfg.n, cfg.t, Field::Make(cfg.modulus),
                          cfg.init, rng);
    case Scheme::kTNNaive:
      return DealerInitTNNaive(cfg.automaton, cfg.n, cfg.t, cfg.init, rng);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown scheme");
}

SimulationResult RunSimulation(const SimulationConfig& cfg,
                               const SimulationOptions& opts) {
  ValidateConfig(cfg);
  const Field field = Field::Make(cfg.modulus);
  const Prg& prg = opts.prg ? *opts.prg : ReferencePrg();
  DeterministicRandomSource own_rng(cfg.rng_seed);
  RandomSource& rng = opts.dealer_rng ? *opts.dealer_rng : own_rng;
  const InstanceSlots slots = MakeInstanceSlots(cfg.scheme, cfg.n, cfg.t);

  SimulationResult res;
  std::optional<IntermediateRun> lazy;
  if (cfg.variant == Variant::kIntermediate) {
    lazy.emplace(cfg.automaton, cfg.scheme, cfg.n, cfg.t, field, cfg.timeline,
                 rng);
    res.agents = lazy->agents();
  } else {
    Deployment d = InitDeployment(cfg, rng);
    res.agents = std::move(d.agents);
    res.dealer = std::move(d.dealer);
  }

  StateIndex oracle = cfg.init;
  auto inject_fault = [&](std::uint64_t tick) {
    if (!cfg.fault || cfg.fault->tick != tick || lazy) return;
    auto& label = res.agents.at(cfg.fault->agent - 1)
                      .instances.front()
                      .labels.at(cfg.fault->state - 1);
    label = field.add(label, field.one());
  };
  auto record = [&](std::uint64_t tick, const TickInput& input,
                    LabelMatrix refresh) {
    if (!opts.record_trace) return;
    TickRecord rec;
    rec.tick = tick;
    rec.symbol = input.symbol;
    rec.labels = CollectLabels(res.agents);
    rec.refresh = std::move(refresh);
    rec.secrets = ComputeSecrets(cfg, field, slots, rec.labels);
    rec.lockstep = SeedsInLockstep(res.agents);
    rec.oracle = oracle;
    res.trace.ticks.push_back(std::move(rec));
  };

  inject_fault(0);
  record(0, TickInput::Idle(), {});
  CaptureDue(cfg.timeline, 0, res.agents, res.view);

  const TickOptions tick_opts{cfg.variant != Variant::kNoRerandomize};
  for (std::uint64_t r = 1; r <= cfg.schedule.size(); ++r) {
    const TickInput& input = cfg.schedule[r - 1];
    LabelMatrix refresh;
    if (lazy) {
      lazy->Tick(input, prg);
      res.agents = lazy->agents();
    } else {
      for (auto& agent : res.agents) {
        refresh.push_back(ApplyTick(agent, input, prg, tick_opts).refresh);
      }
    }
    if (input.symbol) oracle = cfg.automaton->Step(oracle, *input.symbol);
    inject_fault(r);
    record(r, input, std::move(refresh));
    CaptureDue(cfg.timeline, r, res.agents, res.view);
  }
  res.oracle = oracle;
  return res;
}

CheckReport CheckTraceInvariants(const SimulationConfig& cfg,
                                 const Trace& trace) {
  const Field field = Field::Make(cfg.modulus);
  const InstanceSlots slots = MakeInstanceSlots(cfg.scheme, cfg.n, cfg.t);
  const std::size_t m = cfg.automaton->num_states();
  std::vector<Point> pts;
  for (const auto& rec : trace.ticks) {
    if (!rec.lockstep) {
      return {false, StateMismatch(rec.tick, "group seeds out of lockstep")};
    }
    for (std::size_t k = 0; k < rec.secrets.size(); ++k) {
      for (std::size_t j = 0; j < m; ++j) {
        const std::uint64_t want = (j + 1 == rec.oracle.value) ? 1 : 0;
        if (rec.secrets[k][j].value != want) {
          return {false, StateMismatch(
                             rec.tick, "instance " + std::to_string(k) +
                                           " state " + std::to_string(j + 1) +
                                           " reconstructs to " +
                                           std::to_string(rec.secrets[k][j].value) +
                                           ", expected " + std::to_string(want))};
        }
      }
    }
    for (std::size_t k = 0; k < slots.size(); ++k) {
      const auto& slot = slots[k];
      for (std::size_t j = 0; j < m; ++j) {
        if (cfg.scheme == Scheme::kTN) {
          pts.clear();
          for (auto [agent, local] : slot) {
            pts.push_back({{agent}, rec.labels[agent - 1][local][j]});
          }
          if (!OnPolynomialOfDegree(pts, cfg.t, field)) {
            return {false, StateMismatch(rec.tick, "labels of state " +
                                                       std::to_string(j + 1) +
                                                       " exceed degree t")};
          }
        }
        if (rec.refresh.empty()) continue;
        pts.clear();
        FieldElement sum = field.zero();
        for (auto [agent, local] : slot) {
          FieldElement r = rec.refresh[agent - 1][local][j];
          pts.push_back({{agent}, r});
          sum = field.add(sum, r);
        }
        bool zero_sum = cfg.scheme == Scheme::kTN
                            ? LagrangeAt(pts, field.zero(), field) == field.zero() &&
                                  OnPolynomialOfDegree(pts, cfg.t, field)
                            : sum == field.zero();
        if (!zero_sum) {
          return {false, StateMismatch(rec.tick, "refresh terms of state " +
                                                     std::to_string(j + 1) +
                                                     " do not cancel")};
        }
      }
    }
  }
  return {};
}

CheckReport OracleCheck(const SimulationConfig& cfg) {
  try {
    SimulationResult res = RunSimulation(cfg);
    CheckReport rep = CheckTraceInvariants(cfg, res.trace);
    if (!rep.ok) return rep;
    const StateIndex want = RunDirect(*cfg.automaton, cfg.init, cfg.schedule);
    if (res.oracle != want) return {false, "harness oracle diverged"};
    auto mismatch = [&](StateIndex got, const std::string& who) {
      return CheckReport{false, who + " reconstructed state " +
                                    std::to_string(got.value) + ", expected " +
                                    std::to_string(want.value)};
    };
    switch (cfg.scheme) {
      case Scheme::kNN: {
        StateIndex got = ReconstructNN(res.agents, cfg.n);
        if (got != want) return mismatch(got, "all agents");
        break;
      }
      case Scheme::kTN: {
        const Field field = Field::Make(cfg.modulus);
        for (const auto& subset : EnumerateSubsets(cfg.n, cfg.t + 1)) {
          std::vector<IndexedLabels> shares;
          for (std::uint32_t i : subset) shares.push_back(LabelsOf(res.agents[i - 1]));
          StateIndex got = ReconstructTN(shares, cfg.t, field);
          if (got != want) return mismatch(got, "subset");
        }
        std::vector<IndexedLabels> all;
        for (const auto& a : res.agents) all.push_back(LabelsOf(a));
        StateIndex strict = ReconstructTN(all, cfg.t, field, /*strict=*/true);
        if (strict != want) return mismatch(strict, "strict all-agent");
        break;
      }
      case Scheme::kTNNaive: {
        for (const auto& subset : EnumerateSubsets(cfg.n, cfg.t + 1)) {
          StateIndex got = ReconstructTNNaiveSubset(res.agents, subset);
          if (got != want) return mismatch(got, "instance");
        }
        // Every responder set of size >= t + 1.
        for (std::uint32_t mask = 0; mask < (1u << cfg.n); ++mask) {
          if (static_cast<std::size_t>(std::popcount(mask)) < cfg.t + 1) continue;
          std::vector<AgentState> responders;
          for (std::uint32_t i = 0; i < cfg.n; ++i) {
            if (mask & (1u << i)) responders.push_back(res.agents[i]);
          }
          StateIndex got = ReconstructTNNaive(responders, cfg.t);
          if (got != want) return mismatch(got, "responder set");
        }
        break;
      }
    }
    return {};
  } catch (const Error& e) {
    return {false, e.what()};
  }
}

std::vector<std::vector<FieldElement>> SampleViewLabels(
    const SimulationConfig& cfg, std::size_t trials, unsigned threads) {
  ValidateConfig(cfg);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(trials, 1)));
  std::vector<std::vector<FieldElement>> out(trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    try {
      for (std::size_t k; (k = next++) < trials && !failed;) {
        DeterministicRandomSource rng(cfg.rng_seed, k);
        SimulationOptions opts;
        opts.record_trace = false;
        opts.dealer_rng = &rng;
        out[k] = ViewLabels(RunSimulation(cfg, opts).view);
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

StatReport ViewUniformityTest(std::span<const std::vector<FieldElement>> samples,
                              const Field& field) {
  RequireSamples(samples);
  StatReport report{"view-uniformity", samples.size()};
  const std::size_t dims = samples.front().size();
  const std::size_t bins = BinCount(field);
  const std::vector<double> probs = BinProbabilities(field);
  std::vector<double> p_values;
  for (std::size_t c = 0; c < dims; ++c) {
    std::size_t coord[] = {c};
    auto h = Histogram(samples, coord, bins, bins, field);
    Absorb(report, p_values, ChiSquareGoodnessOfFit(h, probs));
  }
  if (std::size_t cells = JointCells(bins, dims, samples.size() / 5);
      dims > 1 && cells > 0) {
    std::vector<std::size_t> coords(dims);
    for (std::size_t c = 0; c < dims; ++c) coords[c] = c;
    auto h = Histogram(samples, coords, bins, cells, field);
    std::vector<double> joint(cells);
    for (std::size_t cell = 0; cell < cells; ++cell) {
      double p = 1;
      for (std::size_t c = 0, rest = cell; c < dims; ++c, rest /= bins) {
        p *= probs[rest % bins];
      }
      joint[cell] = p;
    }
    Absorb(report, p_values, ChiSquareGoodnessOfFit(h, joint));
  }
  report.tests = p_values.size();
  report.p_value = BonferroniCombine(p_values);
  return report;
}

StatReport TwoSampleViewTest(std::span<const std::vector<FieldElement>> a,
                             std::span<const std::vector<FieldElement>> b,
                             const Field& field) {
  RequireSamples(a);
  RequireSamples(b);
  if (a.size() != b.size() || a.front().size() != b.front().size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "two-sample test needs equal-size samples of equal shape");
  }
  StatReport report{"two-sample-view", a.size()};
  const std::size_t dims = a.front().size();
  const std::size_t bins = BinCount(field);
  const std::size_t limit = a.size() / 5;
  std::vector<double> p_values;
  auto run = [&](std::span<const std::size_t> coords, std::size_t cells) {
    Absorb(report, p_values,
           ChiSquareTwoSample(Histogram(a, coords, bins, cells, field),
                              Histogram(b, coords, bins, cells, field)));
  };
  if (std::size_t cells = JointCells(bins, dims, limit); cells > 0) {
    std::vector<std::size_t> coords(dims);
    for (std::size_t c = 0; c < dims; ++c) coords[c] = c;
    run(coords, cells);
  } else {
    for (std::size_t c = 0; c < dims; ++c) {
      std::size_t coord[] = {c};
      run(coord, bins);
    }
    if (std::size_t cells = JointCells(bins, 2, limit); cells > 0) {
      for (std::size_t c = 0; c < dims; ++c) {
        for (std::size_t d = c + 1; d < dims; ++d) {
          std::size_t coords[] = {c, d};
          run(coords, cells);
        }
      }
    }
  }
  report.tests = p_values.size();
  report.p_value = BonferroniCombine(p_values);
  return report;
}

ExactDistribution ExactViewDistribution(const SimulationConfig& cfg,
                                        unsigned seed_bits,
                                        std::uint64_t max_outcomes) {
  ValidateConfig(cfg);
  ExactDistribution dist;
  dist.total = ForEachOutcome(seed_bits, max_outcomes, [&](RandomSource& rng) {
    SimulationOptions opts;
    opts.record_trace = false;
    opts.dealer_rng = &rng;
    ++dist.counts[DumpView(RunSimulation(cfg, opts).view)];
  });
  return dist;
}

std::string TraceToJsonLines(const Trace& trace, const Field& field) {
  auto hex_matrix = [&](const LabelMatrix& mat) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& agent : mat) {
      nlohmann::json per_agent = nlohmann::json::array();
      for (const auto& inst : agent) {
        nlohmann::json row = nlohmann::json::array();
        for (auto v : inst) row.push_back(field.to_hex(v));
        per_agent.push_back(std::move(row));
      }
      out.push_back(std::move(per_agent));
    }
    return out;
  };
  std::string out;
  for (const auto& rec : trace.ticks) {
    nlohmann::json j;
    j["tick"] = rec.tick;
    j["symbol"] = rec.symbol ? nlohmann::json(*rec.symbol) : nlohmann::json();
    j["labels"] = hex_matrix(rec.labels);
    nlohmann::json secrets = nlohmann::json::array();
    for (const auto& inst : rec.secrets) {
      nlohmann::json row = nlohmann::json::array();
      for (auto v : inst) row.push_back(v.value);
      secrets.push_back(std::move(row));
    }
    j["secrets"] = std::move(secrets);
    j["lockstep"] = rec.lockstep;
    j["oracle"] = rec.oracle.value;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string FormatReport(const StatReport& report, bool json) {
  if (json) {
    nlohmann::json j{{"test", report.name},       {"N", report.samples},
                     {"statistic", report.statistic}, {"dof", report.dof},
                     {"p_value", report.p_value}, {"tests", report.tests}};
    return j.dump() + "\n";
  }
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "test=%s N=%zu statistic=%.6g dof=%.0f p=%.6g tests=%zu\n",
                report.name.c_str(), report.samples, report.statistic,
                report.dof, report.p_value, report.tests);
  return buf;
}

}  // namespace pfsa
