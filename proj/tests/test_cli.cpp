// Copyright 2026 The vsmc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Runs the command-line tool and checks exit codes and artifacts.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
  const std::string command = std::string(VSMC_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string config(const std::string& name) { return std::string(VSMC_SOURCE_DIR) + "/configs/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "vsmc_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(CliTest, ValidatePasses) { EXPECT_EQ(run("validate"), 0); }

TEST(CliTest, SolveWritesReport) {
  const fs::path out = scratch("solution.json");
  fs::remove(out);
  EXPECT_EQ(run("solve --config " + config("four_user_example.json") + " --scheme exact --out " + out.string()), 0);
  const std::string text = read(out);
  EXPECT_NE(text.find("\"E_total_J\""), std::string::npos);
  EXPECT_NE(text.find("\"views\""), std::string::npos);
}

TEST(CliTest, EverySchemeSolves) {
  for (const char* scheme : {"exact", "brute", "relax", "dc", "baseline1", "baseline2"}) {
    EXPECT_EQ(run("solve --config " + config("four_user_example.json") + " --scheme " + scheme), 0) << scheme;
  }
}

TEST(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run("solve --config " + config("four_user_example.json") + " --scheme greedy"), 2);
  EXPECT_EQ(run("solve --scheme exact"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("solve --config /nonexistent.json --scheme exact"), 2);
  EXPECT_EQ(run("solve --config " + write("bad.json", R"({"delta": 0.5})").string() + " --scheme exact"), 2);
  EXPECT_EQ(run("candidates --config " +
                write("offgrid.json", R"({"requests": [2.55], "channels": [1e-3]})").string()),
            2);
}

TEST(CliTest, SolverFailureExitsOne) {
  // Brute force refuses a K = 10 instance.
  EXPECT_EQ(run("solve --config " + config("random_instance.json") + " --scheme brute"), 1);
}

TEST(CliTest, SweepWritesOneRowPerRecord) {
  const fs::path cfg = write("sweep.json", R"({"K": 10, "sweep": {"parameter": "B", "values": [1e7, 2e7],
      "trials": 3, "schemes": ["relax", "dc", "baseline1", "baseline2"]}})");
  const fs::path out = scratch("sweep.csv");
  const fs::path summary = scratch("summary.csv");
  EXPECT_EQ(run("sweep --config " + cfg.string() + " --out " + out.string() + " --summary " + summary.string()), 0);
  std::istringstream in(read(out));
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 1 + 3 * 4 * 2);
  EXPECT_FALSE(read(summary).empty());
}

TEST(CliTest, SweepRequiresSweepSection) {
  EXPECT_EQ(run("sweep --config " + config("four_user_example.json") + " --out " + scratch("x.csv").string()), 2);
}

TEST(CliTest, CandidatesPrintsTables) { EXPECT_EQ(run("candidates --config " + config("four_user_example.json")), 0); }

}  // namespace
