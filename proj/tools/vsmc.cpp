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

// Command-line front end: solve one instance, run a sweep, list candidate
// sets or run the self-check suite. Exit status 0 on success, 1 when a solver
// fails, 2 on usage or configuration errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vsmc/config.hpp"
#include "vsmc/errors.hpp"
#include "vsmc/experiments.hpp"
#include "vsmc/report.hpp"
#include "vsmc/validation.hpp"

namespace {

constexpr int kSolverFailure = 1;
constexpr int kUsageError = 2;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw vsmc::ConfigError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-minimal view selection and resource allocation for multi-view video multicast"};
  app.require_subcommand(1);

  std::string config_path;
  std::string scheme_name;
  std::string out_path;
  std::string summary_path;
  int threads = 0;

  auto* solve = app.add_subcommand("solve", "Solve one instance with one scheme");
  solve->add_option("--config", config_path, "JSON config")->required()->check(CLI::ExistingFile);
  solve->add_option("--scheme", scheme_name, "exact|brute|relax|dc|baseline1|baseline2")
      ->required()
      ->check(CLI::IsMember({"exact", "brute", "relax", "dc", "baseline1", "baseline2"}));
  solve->add_option("--out", out_path, "write the solution as JSON");

  auto* sweep = app.add_subcommand("sweep", "Run the sweep section of a config");
  sweep->add_option("--config", config_path, "JSON config with a sweep section")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--out", out_path, "per-trial CSV")->required();
  sweep->add_option("--summary", summary_path, "per-point means CSV");
  sweep->add_option("--threads", threads, "worker threads (default: VSMC_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);

  auto* validate = app.add_subcommand("validate", "Run the invariant self-check suite");

  auto* candidates = app.add_subcommand("candidates", "Print the reduced candidate sets U_k");
  candidates->add_option("--config", config_path, "JSON config")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*validate) {
      return vsmc::print_report(std::cout, vsmc::run_validation_suite()) ? 0 : kSolverFailure;
    }
    const vsmc::RunConfig config = vsmc::load_config(config_path);
    if (*candidates) {
      std::cout << vsmc::candidates_report(config.scenario());
      return 0;
    }
    if (*solve) {
      const vsmc::Scenario scenario = config.scenario();
      vsmc::Solution solution;
      try {
        solution = vsmc::run_scheme(scenario, vsmc::parse_scheme(scheme_name), config.dc);
      } catch (const vsmc::ConfigError&) {
        throw;
      } catch (const vsmc::Error& e) {
        std::cerr << "solver failed: " << e.what() << '\n';
        return kSolverFailure;
      }
      std::cout << vsmc::solution_report(scenario, solution);
      if (!out_path.empty()) write_file(out_path, vsmc::solution_to_json(scenario, solution) + "\n");
      return 0;
    }
    if (*sweep) {
      if (!config.sweep) throw vsmc::ConfigError("sweep: section missing from config");
      vsmc::SweepSpec spec = *config.sweep;
      if (threads > 0) spec.threads = threads;
      const auto records = vsmc::run_sweep(spec);
      std::ofstream csv(out_path);
      if (!csv) throw vsmc::ConfigError("cannot write '" + out_path + "'");
      vsmc::write_csv(csv, records);
      const auto rows = vsmc::summarize(records);
      if (!summary_path.empty()) {
        std::ofstream summary(summary_path);
        if (!summary) throw vsmc::ConfigError("cannot write '" + summary_path + "'");
        vsmc::write_summary_csv(summary, rows);
      }
      vsmc::write_summary_csv(std::cout, rows);
      int failures = 0;
      for (const auto& r : records) failures += r.failed();
      if (failures) {
        std::cerr << failures << " trial(s) failed; see the flags column\n";
        return kSolverFailure;
      }
      return 0;
    }
  } catch (const vsmc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const vsmc::InvalidViewError& e) {
    std::cerr << "invalid view: " << e.what() << '\n';
    return kUsageError;
  } catch (const vsmc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
  return kUsageError;
}
