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

// Drives the pfsa binary end to end through temporary directories.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "test_util.h"

#ifndef PFSA_CLI_PATH
#define PFSA_CLI_PATH "pfsa"
#endif

namespace pfsa {
namespace {

namespace fs = std::filesystem;
using testing::ReadFile;

struct Result {
  int code;
  std::string out;
};

Result Cli(const std::string& args) {
  std::string cmd = std::string(PFSA_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string Example() { return std::string(PFSA_SOURCE_DIR) + "/data/example.fsa"; }

void WriteText(const fs::path& p, const std::string& s) {
  std::ofstream(p, std::ios::binary) << s;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pfsa_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string P(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::size_t CountSeedLines(const std::string& state) {
  std::size_t count = 0;
  for (std::size_t pos = 0; (pos = state.find("\nT=", pos)) != std::string::npos; ++pos) ++count;
  return count;
}

TEST_F(CliTest, InitWritesOneFilePerAgent) {
  ASSERT_EQ(Cli("init " + Example() + " --scheme nn --n 3 --out " + P("s") + " --seed 1").code, 0);
  for (int i = 1; i <= 3; ++i) {
    std::string st = ReadFile(P("s/agent_" + std::to_string(i) + ".state"));
    EXPECT_EQ(CountSeedLines(st), 2u);
  }
  EXPECT_FALSE(fs::exists(P("s/agent_4.state")));
  EXPECT_FALSE(fs::exists(P("s/dealer.state")));
}

TEST_F(CliTest, InitRejectsBadThreshold) {
  EXPECT_EQ(Cli("init " + Example() + " --scheme tn --n 4 --t 2 --out " + P("s")).code, 2);
  EXPECT_EQ(Cli("init " + Example() + " --scheme tn --n 5 --t 2 --modulus 5 --out " + P("s")).code, 2);
  EXPECT_EQ(Cli("init " + Example() + " --n 3 --init 9 --out " + P("s")).code, 2);
  EXPECT_EQ(Cli("init --n 3").code, 2);
  EXPECT_EQ(Cli("bogus").code, 2);
}

TEST_F(CliTest, InitDeterministicWithSeed) {
  for (const char* scheme : {"nn --n 4", "tn --n 5 --t 2", "tn-naive --n 5 --t 2"}) {
    ASSERT_EQ(Cli("init " + Example() + " --scheme " + scheme + " --out " + P("a") +
                  " --seed 42 --keep-dealer").code, 0);
    ASSERT_EQ(Cli("init " + Example() + " --scheme " + scheme + " --out " + P("b") +
                  " --seed 42 --keep-dealer").code, 0);
    for (const auto& entry : fs::directory_iterator(P("a"))) {
      auto name = entry.path().filename().string();
      EXPECT_EQ(ReadFile(entry.path()), ReadFile(P("b/" + name))) << scheme << " " << name;
    }
    fs::remove_all(P("a"));
    fs::remove_all(P("b"));
  }
}

TEST_F(CliTest, RunEmptyTraceLeavesFilesIdentical) {
  ASSERT_EQ(Cli("init " + Example() + " --n 3 --out " + P("s") + " --seed 2").code, 0);
  const std::string before = ReadFile(P("s/agent_2.state"));
  WriteText(P("empty"), "");
  ASSERT_EQ(Cli("run " + P("s") + " " + P("empty")).code, 0);
  EXPECT_EQ(ReadFile(P("s/agent_2.state")), before);
}

TEST_F(CliTest, IdleTicksRerandomizeAndVerify) {
  ASSERT_EQ(Cli("init " + Example() + " --scheme tn --n 5 --t 2 --init 3 --out " + P("s") +
                " --seed 3 --keep-dealer").code, 0);
  const std::string before = ReadFile(P("s/agent_1.state"));
  WriteText(P("idle"), "-\n-\n-\n-\n-\n");
  ASSERT_EQ(Cli("run " + P("s") + " " + P("idle")).code, 0);
  const std::string after = ReadFile(P("s/agent_1.state"));
  EXPECT_NE(after.find("tick 00000000000000000005\n"), std::string::npos);
  EXPECT_NE(after, before);
  EXPECT_EQ(after.size(), before.size());
  EXPECT_EQ(Cli("verify " + P("s") + " " + P("s/dealer.state") + " " + P("idle")).code, 0);
  EXPECT_EQ(Cli("reconstruct " + P("s/agent_2.state") + " " + P("s/agent_4.state") + " " +
                P("s/agent_5.state")).out,
            "state 3\n");
}

TEST_F(CliTest, RunIsDeterministicFromSnapshot) {
  ASSERT_EQ(Cli("init " + Example() + " --scheme tn-naive --n 5 --t 2 --out " + P("a") +
                " --seed 4").code, 0);
  fs::copy(P("a"), P("b"));
  WriteText(P("tr"), "alpha\n-\nbeta\nbeta\n-\n");
  ASSERT_EQ(Cli("run " + P("a") + " " + P("tr")).code, 0);
  ASSERT_EQ(Cli("run " + P("b") + " " + P("tr")).code, 0);
  for (int i = 1; i <= 5; ++i) {
    auto name = "/agent_" + std::to_string(i) + ".state";
    EXPECT_EQ(ReadFile(P("a") + name), ReadFile(P("b") + name));
  }
  EXPECT_FALSE(fs::exists(P("a/agent_1.state.tmp")));
}

TEST_F(CliTest, RunRejectsUnknownSymbolAndCorruptState) {
  ASSERT_EQ(Cli("init " + Example() + " --n 3 --out " + P("s") + " --seed 5").code, 0);
  const std::string before = ReadFile(P("s/agent_1.state"));
  WriteText(P("bad"), "alpha\ngamma\n");
  EXPECT_EQ(Cli("run " + P("s") + " " + P("bad")).code, 2);
  EXPECT_EQ(ReadFile(P("s/agent_1.state")), before);
  WriteText(P("s/agent_3.state"), "garbage\n");
  WriteText(P("ok"), "alpha\n");
  EXPECT_EQ(Cli("run " + P("s") + " " + P("ok")).code, 2);
}

TEST_F(CliTest, ReconstructFreshAndTooFew) {
  ASSERT_EQ(Cli("init " + Example() + " --n 3 --init 4 --out " + P("n") + " --seed 6").code, 0);
  EXPECT_EQ(Cli("reconstruct " + P("n/agent_1.state") + " " + P("n/agent_2.state") + " " +
                P("n/agent_3.state")).out,
            "state 4\n");
  EXPECT_EQ(Cli("reconstruct " + P("n/agent_1.state") + " " + P("n/agent_2.state")).code, 2);
  ASSERT_EQ(Cli("init " + Example() + " --scheme tn --n 5 --t 2 --init 2 --out " + P("t") +
                " --seed 6").code, 0);
  EXPECT_EQ(Cli("reconstruct " + P("t/agent_1.state") + " " + P("t/agent_3.state")).code, 2);
  EXPECT_EQ(Cli("reconstruct --strict " + P("t/agent_1.state") + " " + P("t/agent_2.state") +
                " " + P("t/agent_3.state") + " " + P("t/agent_4.state")).out,
            "state 2\n");
}

TEST_F(CliTest, VerifyDetectsTampering) {
  ASSERT_EQ(Cli("init " + Example() + " --n 3 --out " + P("s") + " --seed 7 --keep-dealer").code, 0);
  WriteText(P("tr"), "beta\n-\n");
  ASSERT_EQ(Cli("run " + P("s") + " " + P("tr")).code, 0);
  ASSERT_EQ(Cli("verify " + P("s") + " " + P("s/dealer.state") + " " + P("tr")).code, 0);
  WriteText(P("other"), "alpha\n-\n");
  EXPECT_EQ(Cli("verify " + P("s") + " " + P("s/dealer.state") + " " + P("other")).code, 1);
  std::string st = ReadFile(P("s/agent_2.state"));
  auto pos = st.find("labels ") + 7;
  st[pos] = st[pos] == '0' ? '1' : '0';
  WriteText(P("s/agent_2.state"), st);
  EXPECT_EQ(Cli("verify " + P("s") + " " + P("s/dealer.state") + " " + P("tr")).code, 1);
}

TEST_F(CliTest, VerifyRandomBundledConfigs) {
  std::mt19937_64 gen(77);
  auto a = testing::ExampleAutomaton();
  for (int c = 0; c < 100; ++c) {
    std::string scheme;
    switch (c % 3) {
      case 0: scheme = "nn --n " + std::to_string(2 + gen() % 5); break;
      case 1: scheme = "tn --n " + std::to_string(3 + gen() % 3) + " --t 1"; break;
      default: scheme = "tn-naive --n 5 --t 2"; break;
    }
    const std::string dir = P("c" + std::to_string(c));
    const std::string init = std::to_string(1 + gen() % 4);
    WriteText(P("tr"), FormatTickTrace(testing::RandomSchedule(gen, *a, 1 + gen() % 40)));
    ASSERT_EQ(Cli("init " + Example() + " --scheme " + scheme + " --init " + init + " --seed " +
                  std::to_string(c) + " --keep-dealer --out " + dir).code, 0);
    ASSERT_EQ(Cli("run " + dir + " " + P("tr")).code, 0);
    Result v = Cli("verify " + dir + " " + dir + "/dealer.state " + P("tr"));
    ASSERT_EQ(v.code, 0) << scheme << " config " << c;
    fs::remove_all(dir);
  }
}

TEST_F(CliTest, CorruptDumpsCurrentMemory) {
  ASSERT_EQ(Cli("init " + Example() + " --n 3 --out " + P("s") + " --seed 8").code, 0);
  WriteText(P("tr"), "-\n-\n");
  ASSERT_EQ(Cli("run " + P("s") + " " + P("tr")).code, 0);
  Result r = Cli("corrupt " + P("s") + " 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, ReadFile(P("s/agent_2.state")) + "captured_at 2\n");
  EXPECT_EQ(Cli("corrupt " + P("s") + " 4").code, 2);
}

TEST_F(CliTest, CheckGroups) {
  WriteText(P("two"), "corrupt 1 0\ncorrupt 2 5\n");
  WriteText(P("three"), "corrupt 1 0\ncorrupt 2 5\ncorrupt 3 6\n");
  Result ok = Cli("check-groups --scheme nn --n 3 --timeline " + P("two"));
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "appropriate yes\nhypergraph ok\n");
  Result bad = Cli("check-groups --scheme nn --n 3 --timeline " + P("three"));
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("violated at step 3 (agent 3, tick 6)"), std::string::npos) << bad.out;
  EXPECT_EQ(Cli("check-groups --scheme tn --n 5 --t 2 --timeline " + P("two")).code, 0);
  EXPECT_EQ(Cli("check-groups --scheme tn --n 4 --t 2 --timeline " + P("two")).code, 2);
}

TEST_F(CliTest, SimulateDeterministicJsonLines) {
  WriteText(P("tr"), "alpha\nbeta\n-\n");
  const std::string args = "simulate " + Example() +
                           " --scheme tn --n 5 --t 2 --seed 9 --trace " + P("tr");
  Result a = Cli(args + " --out " + P("a.jsonl"));
  Result b = Cli(args + " --out " + P("b.jsonl"));
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(ReadFile(P("a.jsonl")), ReadFile(P("b.jsonl")));
  Result direct = Cli(args);
  EXPECT_EQ(direct.out, ReadFile(P("a.jsonl")));
  std::string last = direct.out.substr(direct.out.rfind('\n', direct.out.size() - 2) + 1);
  auto j = nlohmann::json::parse(last);
  EXPECT_EQ(j["tick"], 3);
  EXPECT_EQ(j["oracle"], 2);
}

TEST_F(CliTest, PrgVectorsMatchGolden) {
  Result r = Cli("prg-vectors");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, ReadFile(std::string(PFSA_SOURCE_DIR) + "/tests/golden/prg_vectors.txt"));
}

TEST_F(CliTest, PrivacyReports) {
  nlohmann::json spec = {
      {"automaton", Example()}, {"scheme", "nn"}, {"n", 3}, {"trials", 2000}, {"seed", 5},
      {"timeline", {{1, 1}, {2, 2}}}, {"test", "two-sample"},
      {"a", {{"init", 1}, {"schedule", {"alpha", "-"}}}},
      {"b", {{"init", 4}, {"schedule", {"beta", "beta"}}}}};
  WriteText(P("same.json"), spec.dump());
  Result r = Cli("privacy " + P("same.json") + " --format json");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["N"], 2000);
  EXPECT_GT(j["p_value"].get<double>(), 0.001);
  Result text = Cli("privacy " + P("same.json"));
  EXPECT_EQ(text.out.rfind("test=two-sample-view N=2000 ", 0), 0u) << text.out;

  spec["a"]["variant"] = "no-rerandomize";
  spec["b"]["variant"] = "no-rerandomize";
  WriteText(P("broken.json"), spec.dump());
  EXPECT_EQ(Cli("privacy " + P("broken.json")).code, 1);
  spec["expect"] = "different";
  WriteText(P("power.json"), spec.dump());
  EXPECT_EQ(Cli("privacy " + P("power.json")).code, 0);

  spec["timeline"] = {{1, 1}, {2, 2}, {3, 2}};
  WriteText(P("over.json"), spec.dump());
  EXPECT_EQ(Cli("privacy " + P("over.json")).code, 2);
  WriteText(P("junk.json"), "{");
  EXPECT_EQ(Cli("privacy " + P("junk.json")).code, 2);
}

}  // namespace
}  // namespace pfsa
