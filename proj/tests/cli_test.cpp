// Copyright 2026 The qpuf-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpuf/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qpuf::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qpuf_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(call({}).code, kExitUsage);
  EXPECT_EQ(call({"no-such-command"}).code, kExitUsage);
  EXPECT_EQ(call({"game", "--mode", "qsel", "--adversary", "qe-forger"}).code, kExitUsage);
  EXPECT_EQ(call({"game", "--mode", "qex", "--adversary", "subspace"}).code, kExitUsage);
  EXPECT_EQ(call({"game", "--mode", "qsel", "--adversary", "tomography"}).code, kExitUsage);
  EXPECT_EQ(call({"game", "--mode", "qsel", "--adversary", "random", "--privileged"}).code, kExitUsage);
}

TEST(CliTest, QgenIsDeterministic) {
  const Result a = call({"qgen", "--qubits", "2", "--seed", "5"});
  const Result b = call({"qgen", "--qubits", "2", "--seed", "5"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out)["n"], 2);
}

TEST(CliTest, GameEmitsTranscriptsAndSummary) {
  const Result r = call({"game", "--mode", "qex", "--adversary", "qe-forger", "--mu", "0.6", "--qubits",
                         "2", "--trials", "5", "--seed", "3", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  int transcripts = 0;
  bool summary = false;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    if (j.contains("summary")) {
      summary = true;
    } else {
      ++transcripts;
      EXPECT_EQ(j["mode"], "qex");
      EXPECT_EQ(j["k"], 2);
    }
  }
  EXPECT_EQ(transcripts, 5);
  EXPECT_TRUE(summary);
}

TEST(CliTest, ForgeSweepPasses) {
  const Result r = call({"forge-sweep", "--qubits", "2", "--mu-steps", "4", "--trials", "2"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
}

TEST(CliTest, VerifyAllFailsWithInjectedNoise) {
  const Result r = call({"verify-all", "--inject-collision-epsilon", "0.1", "--seed", "1"});
  EXPECT_EQ(r.code, kExitCheckFailed);
  EXPECT_TRUE(nlohmann::json::parse(r.out).is_array());
}

TEST(CliTest, ManifestReplayIsByteIdentical) {
  const fs::path out = scratch("sel.jsonl");
  const Result r = call({"selective-bound", "--qubits", "2", "--d", "1", "--trials", "200", "--seed",
                         "9", "--out", out.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const fs::path manifest = out.string() + ".manifest.json";
  ASSERT_TRUE(fs::exists(manifest));
  const auto m = nlohmann::json::parse(slurp(manifest));
  EXPECT_EQ(m["subcommand"], "selective-bound");
  EXPECT_EQ(m["seed"], 9);

  const fs::path again = scratch("sel_again.jsonl");
  const Result rep = call({"replay", "--manifest", manifest.string(), "--out", again.string()});
  EXPECT_EQ(rep.code, kExitOk) << rep.err;
  EXPECT_NE(rep.out.find("identical"), std::string::npos);
  EXPECT_EQ(slurp(out), slurp(again));
}

TEST(CliTest, ReplayDetectsTampering) {
  const fs::path out = scratch("demo.json");
  ASSERT_EQ(call({"qe-demo", "--qubits", "2", "--seed", "4", "--out", out.string()}).code, kExitOk);
  std::ofstream(out, std::ios::app) << " ";
  const Result rep = call({"replay", "--manifest", out.string() + ".manifest.json"});
  EXPECT_EQ(rep.code, kExitCheckFailed);
  EXPECT_NE(rep.out.find("differs"), std::string::npos);
}

}  // namespace
}  // namespace qpuf::cli
