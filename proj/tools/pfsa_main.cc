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

// pfsa command-line tool. Exit codes: 0 ok, 1 a check or test failed,
// 2 usage or data error.

#include <sodium.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "pfsa/adversary.h"
#include "pfsa/automaton.h"
#include "pfsa/error.h"
#include "pfsa/harness.h"
#include "pfsa/protocol.h"
#include "pfsa/random.h"
#include "pfsa/scheme_nn.h"
#include "pfsa/scheme_tn.h"
#include "pfsa/text.h"

namespace fs = std::filesystem;

namespace pfsa {
namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

constexpr char kAutomatonFile[] = "automaton.fsa";
constexpr char kDealerHeader[] = "pfsa-dealer v1";

// Signals a failed check (exit 1) as opposed to bad input (exit 2).
struct CheckFailure {
  std::string message;
};

std::string ReadFileOrThrow(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kInvalidArgument, "cannot read " + path.string());
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to a sibling temp file and renames it over the target.
void WriteFileAtomic(const fs::path& path, const std::string& data) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << data;
    out.flush();
    if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

fs::path AgentPath(const fs::path& dir, std::uint32_t i) {
  return dir / ("agent_" + std::to_string(i) + ".state");
}

std::shared_ptr<const Automaton> LoadAutomaton(const fs::path& path) {
  return std::make_shared<const Automaton>(Automaton::Parse(ReadFileOrThrow(path)));
}

std::unique_ptr<RandomSource> DealerRng(const std::optional<std::uint64_t>& seed) {
  if (seed) return std::make_unique<DeterministicRandomSource>(*seed);
  return std::make_unique<OsRandomSource>();
}

// Splits concatenated state files at their `end` lines.
std::vector<std::string> SplitStateBlocks(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (auto line : SplitLines(text)) {
    if (line.empty() && cur.empty()) continue;
    cur += line;
    cur += '\n';
    if (line == "end") {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) throw Error(ErrorCode::kStateFileCorrupt, "trailing partial state block");
  return out;
}

std::vector<AgentState> LoadAgents(const fs::path& dir,
                                   std::shared_ptr<const Automaton> automaton) {
  AgentState first = ReadAgentState(ReadFileOrThrow(AgentPath(dir, 1)), automaton);
  std::vector<AgentState> agents;
  for (std::uint32_t i = 1; i <= first.n; ++i) {
    AgentState st = ReadAgentState(ReadFileOrThrow(AgentPath(dir, i)), automaton);
    if (st.index != i || st.n != first.n || st.t != first.t ||
        st.scheme != first.scheme || st.field != first.field) {
      throw Error(ErrorCode::kStateFileCorrupt,
                  AgentPath(dir, i).string() + " does not match agent_1.state");
    }
    agents.push_back(std::move(st));
  }
  return agents;
}

// Reconstruction over the supplied agents, dispatching on scheme.
StateIndex Reconstruct(std::span<const AgentState> agents, bool strict) {
  if (agents.empty()) throw Error(ErrorCode::kMissingShares, "no state files");
  const AgentState& a0 = agents.front();
  switch (a0.scheme) {
    case Scheme::kNN:
      return ReconstructNN(agents, a0.n);
    case Scheme::kTN: {
      std::vector<IndexedLabels> shares;
      for (const auto& a : agents) shares.push_back(LabelsOf(a));
      return ReconstructTN(shares, a0.t, a0.field, strict);
    }
    case Scheme::kTNNaive:
      return ReconstructTNNaive(agents, a0.t);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown scheme");
}

// ---- init -----------------------------------------------------------------

struct InitArgs {
  std::string automaton;
  std::string scheme = "nn";
  std::size_t n = 0;
  std::size_t t = 0;
  std::uint64_t modulus = 0;
  std::uint32_t init = 1;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool keep_dealer = false;
};

int CmdInit(const InitArgs& args) {
  auto automaton = LoadAutomaton(args.automaton);
  const Scheme scheme = ParseScheme(args.scheme);
  SimulationConfig cfg;
  cfg.automaton = automaton;
  cfg.scheme = scheme;
  cfg.n = args.n;
  cfg.t = scheme == Scheme::kNN ? 0 : args.t;
  cfg.modulus = args.modulus ? args.modulus : (scheme == Scheme::kTN ? kMersenne61 : 2);
  cfg.init = {args.init};
  ValidateConfig(cfg);
  auto rng = DealerRng(args.seed);
  Deployment d = InitDeployment(cfg, *rng);

  const fs::path dir = args.out;
  fs::create_directories(dir);
  WriteFileAtomic(dir / kAutomatonFile, automaton->Serialize());
  for (const auto& a : d.agents) WriteFileAtomic(AgentPath(dir, a.index), WriteAgentState(a));
  if (args.keep_dealer) {
    std::string dealer = std::string(kDealerHeader) + "\ninit " +
                         std::to_string(d.dealer.init.value) + "\n";
    for (const auto& a : d.dealer.initial_agents) dealer += WriteAgentState(a);
    WriteFileAtomic(dir / "dealer.state", dealer);
  }
  std::cout << "wrote " << d.agents.size() << " agent state files to " << dir.string() << "\n";
  return kOk;
}

// ---- run ------------------------------------------------------------------

int CmdRun(const std::string& dir_arg, const std::string& trace_path) {
  const fs::path dir = dir_arg;
  auto automaton = LoadAutomaton(dir / kAutomatonFile);
  std::vector<AgentState> agents = LoadAgents(dir, automaton);
  const InputStream ticks = ParseTickTrace(ReadFileOrThrow(trace_path));
  for (const auto& tick : ticks) {
    if (tick.symbol) automaton->SymbolIndex(*tick.symbol);
  }
  for (const auto& tick : ticks) {
    for (auto& a : agents) ApplyTick(a, tick);
  }
  for (const auto& a : agents) WriteFileAtomic(AgentPath(dir, a.index), WriteAgentState(a));
  std::cout << "applied " << ticks.size() << " ticks to " << agents.size() << " agents\n";
  return kOk;
}

// ---- corrupt --------------------------------------------------------------

int CmdCorrupt(const std::string& dir_arg, std::uint32_t agent) {
  const fs::path dir = dir_arg;
  auto automaton = LoadAutomaton(dir / kAutomatonFile);
  AgentState st = ReadAgentState(ReadFileOrThrow(AgentPath(dir, agent)), automaton);
  std::cout << DumpView(View{TakeSnapshot(st)});
  return kOk;
}

// ---- reconstruct ----------------------------------------------------------

int CmdReconstruct(const std::vector<std::string>& files, const std::string& automaton_arg,
                   bool strict) {
  fs::path automaton_path = automaton_arg.empty()
                                ? fs::path(files.front()).parent_path() / kAutomatonFile
                                : fs::path(automaton_arg);
  auto automaton = LoadAutomaton(automaton_path);
  std::vector<AgentState> agents;
  for (const auto& f : files) agents.push_back(ReadAgentState(ReadFileOrThrow(f), automaton));
  std::cout << "state " << Reconstruct(agents, strict).value << "\n";
  return kOk;
}

// ---- verify ---------------------------------------------------------------

int CmdVerify(const std::string& dir_arg, const std::string& dealer_path,
              const std::string& trace_path) {
  const fs::path dir = dir_arg;
  auto automaton = LoadAutomaton(dir / kAutomatonFile);
  std::vector<AgentState> agents = LoadAgents(dir, automaton);
  const InputStream ticks = ParseTickTrace(ReadFileOrThrow(trace_path));

  const std::string dealer_text = ReadFileOrThrow(dealer_path);
  auto lines = SplitLines(dealer_text);
  if (lines.size() < 2 || lines[0] != kDealerHeader || !lines[1].starts_with("init ")) {
    throw Error(ErrorCode::kStateFileCorrupt, "bad dealer file header");
  }
  const StateIndex init{static_cast<std::uint32_t>(ParseUint(lines[1].substr(5)))};
  std::size_t body = lines[0].size() + lines[1].size() + 2;
  std::vector<AgentState> replay;
  for (const auto& block : SplitStateBlocks(std::string_view(dealer_text).substr(body))) {
    replay.push_back(ReadAgentState(block, automaton));
  }
  if (replay.size() != agents.size()) {
    throw CheckFailure{"dealer file holds " + std::to_string(replay.size()) +
                       " agents, state dir holds " + std::to_string(agents.size())};
  }
  for (const auto& tick : ticks) {
    for (auto& a : replay) ApplyTick(a, tick);
  }
  for (std::size_t k = 0; k < agents.size(); ++k) {
    if (!(agents[k] == replay[k])) {
      throw CheckFailure{"agent " + std::to_string(k + 1) +
                         " differs from the dealer replay of the trace"};
    }
  }

  const StateIndex want = RunDirect(*automaton, init, ticks);
  const AgentState& a0 = agents.front();
  std::vector<std::vector<AgentState>> responder_sets;
  if (a0.scheme == Scheme::kNN) {
    responder_sets.push_back(agents);
  } else {
    for (const auto& subset : EnumerateSubsets(a0.n, a0.t + 1)) {
      std::vector<AgentState> set;
      for (auto i : subset) set.push_back(agents[i - 1]);
      responder_sets.push_back(std::move(set));
    }
    responder_sets.push_back(agents);
  }
  for (const auto& set : responder_sets) {
    StateIndex got;
    try {
      got = Reconstruct(set, /*strict=*/a0.scheme == Scheme::kTN && set.size() == agents.size());
    } catch (const Error& e) {
      throw CheckFailure{e.what()};
    }
    if (got != want) {
      throw CheckFailure{"reconstructed state " + std::to_string(got.value) +
                         ", plain execution gives " + std::to_string(want.value)};
    }
  }
  std::cout << "ok state " << want.value << " (" << responder_sets.size()
            << " responder sets)\n";
  return kOk;
}

// ---- privacy --------------------------------------------------------------

Variant ParseVariant(const std::string& s) {
  if (s == "protocol") return Variant::kProtocol;
  if (s == "intermediate") return Variant::kIntermediate;
  if (s == "no-rerandomize") return Variant::kNoRerandomize;
  throw Error(ErrorCode::kInvalidArgument, "unknown variant '" + s + "'");
}

InputStream ScheduleFromJson(const nlohmann::json& j) {
  InputStream out;
  for (const auto& tok : j) {
    std::string s = tok.get<std::string>();
    out.push_back(s == "-" ? TickInput::Idle() : TickInput::Of(s));
  }
  return out;
}

// Test spec (JSON):
//   {"automaton": "data/example.fsa", "scheme": "nn", "n": 3, "t": 0,
//    "modulus": 2, "trials": 20000, "seed": 1,
//    "timeline": [[1, 2], [3, 5]],
//    "test": "two-sample" | "uniformity",
//    "a": {"init": 1, "schedule": ["alpha", "-"], "variant": "protocol"},
//    "b": {...},                  (two-sample only)
//    "alpha": 0.001,
//    "expect": "same" | "different"}
int CmdPrivacy(const std::string& spec_path, const std::string& format, unsigned threads) {
  const fs::path spec_file = spec_path;
  nlohmann::json spec;
  try {
    spec = nlohmann::json::parse(ReadFileOrThrow(spec_file));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("privacy spec: ") + e.what());
  }
  try {
    fs::path automaton_path = spec.at("automaton").get<std::string>();
    if (automaton_path.is_relative() && !fs::exists(automaton_path)) {
      automaton_path = spec_file.parent_path() / automaton_path;
    }
    SimulationConfig base;
    base.automaton = LoadAutomaton(automaton_path);
    base.scheme = ParseScheme(spec.at("scheme").get<std::string>());
    base.n = spec.at("n").get<std::size_t>();
    base.t = spec.value("t", std::size_t{0});
    base.modulus = spec.value("modulus", std::uint64_t{2});
    base.rng_seed = spec.value("seed", std::uint64_t{0});
    for (const auto& e : spec.value("timeline", nlohmann::json::array())) {
      base.timeline.events.push_back({e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint64_t>()});
    }
    if (!ValidateTimeline(base.timeline, base.scheme, base.n, base.t)) {
      throw Error(ErrorCode::kInvalidArgument, "timeline is not appropriate for the scheme");
    }
    const std::size_t trials = spec.value("trials", std::size_t{20000});
    const double alpha = spec.value("alpha", 0.001);
    const std::string test = spec.value("test", std::string("two-sample"));
    const bool expect_same = spec.value("expect", std::string("same")) == "same";

    auto side = [&](const nlohmann::json& j, std::uint64_t seed_offset) {
      SimulationConfig cfg = base;
      cfg.init = {j.value("init", std::uint32_t{1})};
      cfg.schedule = ScheduleFromJson(j.at("schedule"));
      cfg.variant = ParseVariant(j.value("variant", std::string("protocol")));
      cfg.rng_seed = base.rng_seed + seed_offset;
      return SampleViewLabels(cfg, trials, threads);
    };
    const Field field = Field::Make(base.modulus);
    StatReport report;
    if (test == "uniformity") {
      report = ViewUniformityTest(side(spec.at("a"), 0), field);
    } else if (test == "two-sample") {
      auto a = side(spec.at("a"), 0);
      auto b = side(spec.at("b"), 1);
      report = TwoSampleViewTest(a, b, field);
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown test '" + test + "'");
    }
    std::cout << FormatReport(report, format == "json");
    const bool same = report.p_value > alpha;
    return same == expect_same ? kOk : kCheckFailed;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("privacy spec: ") + e.what());
  }
}

// ---- check-groups ---------------------------------------------------------

int CmdCheckGroups(const std::string& scheme_arg, std::size_t n, std::size_t t,
                   const std::string& timeline_path) {
  const Scheme scheme = ParseScheme(scheme_arg);
  ValidateSchemeParams(scheme, n, t);
  const CorruptionTimeline rho = ParseTimeline(ReadFileOrThrow(timeline_path));
  for (const auto& e : rho.events) {
    if (e.agent < 1 || e.agent > n) {
      throw Error(ErrorCode::kInvalidArgument, "agent " + std::to_string(e.agent) + " out of range");
    }
  }
  const bool appropriate = ValidateTimeline(rho, scheme, n, scheme == Scheme::kNN ? 0 : t);
  HypergraphVerdict v = CheckSchemeHypergraph(scheme, n, t, rho);
  std::cout << "appropriate " << (appropriate ? "yes" : "no") << "\n";
  if (v.ok) {
    std::cout << "hypergraph ok\n";
    return kOk;
  }
  const auto& bad = rho.events[*v.violating_step];
  std::cout << "hypergraph violated at step " << *v.violating_step + 1 << " (agent "
            << bad.agent << ", tick " << bad.tick << ")\n";
  return kCheckFailed;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  InitArgs init;
  std::string trace;
  std::string timeline;
  std::string out;
  std::string variant = "protocol";
};

int CmdSimulate(const SimulateArgs& args) {
  SimulationConfig cfg;
  cfg.automaton = LoadAutomaton(args.init.automaton);
  cfg.scheme = ParseScheme(args.init.scheme);
  cfg.n = args.init.n;
  cfg.t = cfg.scheme == Scheme::kNN ? 0 : args.init.t;
  cfg.modulus = args.init.modulus ? args.init.modulus
                                  : (cfg.scheme == Scheme::kTN ? kMersenne61 : 2);
  cfg.init = {args.init.init};
  cfg.rng_seed = args.init.seed.value_or(0);
  cfg.variant = ParseVariant(args.variant);
  if (!args.trace.empty()) cfg.schedule = ParseTickTrace(ReadFileOrThrow(args.trace));
  if (!args.timeline.empty()) cfg.timeline = ParseTimeline(ReadFileOrThrow(args.timeline));

  SimulationResult res = RunSimulation(cfg);
  const std::string lines = TraceToJsonLines(res.trace, Field::Make(cfg.modulus));
  if (args.out.empty()) {
    std::cout << lines;
  } else {
    WriteFileAtomic(args.out, lines);
  }
  if (!res.view.empty()) std::cerr << DumpView(res.view);
  if (cfg.variant == Variant::kProtocol) {
    CheckReport rep = CheckTraceInvariants(cfg, res.trace);
    if (!rep.ok) throw CheckFailure{rep.failure};
  }
  return kOk;
}

// ---- prg-vectors ----------------------------------------------------------

// Same lines as tests/golden/prg_vectors.txt, computed by this build.
int CmdPrgVectors() {
  if (sodium_init() < 0) throw Error(ErrorCode::kInvalidArgument, "libsodium init failed");
  std::vector<Seed> seeds(3);
  for (auto& b : seeds[1].bytes) b = 0xff;
  for (std::size_t k = 0; k < kSeedBytes; ++k) seeds[2].bytes[k] = static_cast<std::uint8_t>(k);
  for (int k = 0; k < 4; ++k) {
    const std::string label = "pfsa vector " + std::to_string(k);
    std::array<unsigned char, crypto_hash_sha256_BYTES> digest;
    crypto_hash_sha256(digest.data(), reinterpret_cast<const unsigned char*>(label.data()),
                       label.size());
    seeds.push_back(Seed{});
    std::copy_n(digest.begin(), kSeedBytes, seeds.back().bytes.begin());
  }
  std::cout << "# seed_hex m modulus -> b_1,...,b_m next_seed_hex\n";
  for (const auto& seed : seeds) {
    for (std::uint64_t p : {std::uint64_t{2}, std::uint64_t{5}, std::uint64_t{7},
                            std::uint64_t{257}, kMersenne61}) {
      const Field f = Field::Make(p);
      for (std::size_t m : {1, 4, 8}) {
        Expansion e = PrgExpand(seed, m, f);
        std::cout << seed.ToHex() << ' ' << m << ' ' << p << " -> ";
        for (std::size_t j = 0; j < m; ++j) std::cout << (j ? "," : "") << f.to_hex(e.elements[j]);
        std::cout << ' ' << e.next_seed.ToHex() << "\n";
      }
    }
  }
  return kOk;
}

}  // namespace
}  // namespace pfsa

int main(int argc, char** argv) {
  using namespace pfsa;
  CLI::App app{"Private distributed finite-state automaton evaluation"};
  app.require_subcommand(1);

  auto add_scheme_flags = [](CLI::App* cmd, InitArgs& a) {
    cmd->add_option("--scheme", a.scheme, "nn, tn or tn-naive")->capture_default_str();
    cmd->add_option("--n", a.n, "number of agents")->required();
    cmd->add_option("--t", a.t, "threshold parameter (tn, tn-naive)");
    cmd->add_option("--modulus", a.modulus, "field modulus (default 2, or 2^61-1 for tn)");
    cmd->add_option("--init", a.init, "initial state")->capture_default_str();
    cmd->add_option("--seed", a.seed, "deterministic dealer randomness");
  };

  InitArgs init_args;
  auto* init = app.add_subcommand("init", "deal initial agent state files");
  init->add_option("automaton", init_args.automaton, "automaton file")->required();
  add_scheme_flags(init, init_args);
  init->add_option("--out", init_args.out, "output directory")->required();
  init->add_flag("--keep-dealer", init_args.keep_dealer, "also write dealer.state (testing only)");

  std::string dir, trace, dealer;
  auto* run = app.add_subcommand("run", "apply a tick trace to every agent");
  run->add_option("dir", dir)->required();
  run->add_option("trace", trace, "one symbol or '-' per line")->required();

  std::uint32_t agent = 0;
  auto* corrupt = app.add_subcommand("corrupt", "dump one agent's memory");
  corrupt->add_option("dir", dir)->required();
  corrupt->add_option("agent", agent)->required();

  std::vector<std::string> files;
  std::string automaton_path;
  bool strict = false;
  auto* reconstruct = app.add_subcommand("reconstruct", "recover the current state");
  reconstruct->add_option("files", files, "agent state files")->required();
  reconstruct->add_option("--automaton", automaton_path, "defaults to automaton.fsa beside the files");
  reconstruct->add_flag("--strict", strict, "tn: require every share on one polynomial");

  auto* verify = app.add_subcommand("verify", "check state files against a dealer replay");
  verify->add_option("dir", dir)->required();
  verify->add_option("dealer", dealer)->required();
  verify->add_option("trace", trace)->required();

  std::string spec, format = "text";
  unsigned threads = 0;
  auto* privacy = app.add_subcommand("privacy", "run a statistical view test");
  privacy->add_option("spec", spec, "JSON test spec")->required();
  privacy->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  privacy->add_option("--threads", threads, "0 = all cores");

  std::string scheme = "nn", timeline;
  std::size_t n = 0, t = 0;
  auto* check = app.add_subcommand("check-groups", "hypergraph condition for a timeline");
  check->add_option("--scheme", scheme);
  check->add_option("--n", n)->required();
  check->add_option("--t", t);
  check->add_option("--timeline", timeline)->required();

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "omniscient run, trace as JSON lines");
  simulate->add_option("automaton", sim_args.init.automaton)->required();
  add_scheme_flags(simulate, sim_args.init);
  simulate->add_option("--trace", sim_args.trace);
  simulate->add_option("--timeline", sim_args.timeline);
  simulate->add_option("--out", sim_args.out);
  simulate->add_option("--variant", sim_args.variant)
      ->check(CLI::IsMember({"protocol", "intermediate", "no-rerandomize"}));

  auto* vectors = app.add_subcommand("prg-vectors", "print PRG test vectors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*init) return CmdInit(init_args);
    if (*run) return CmdRun(dir, trace);
    if (*corrupt) return CmdCorrupt(dir, agent);
    if (*reconstruct) return CmdReconstruct(files, automaton_path, strict);
    if (*verify) return CmdVerify(dir, dealer, trace);
    if (*privacy) return CmdPrivacy(spec, format, threads);
    if (*check) return CmdCheckGroups(scheme, n, t, timeline);
    if (*simulate) return CmdSimulate(sim_args);
    if (*vectors) return CmdPrgVectors();
  } catch (const CheckFailure& f) {
    std::cerr << "check failed: " << f.message << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
