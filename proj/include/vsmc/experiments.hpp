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

#pragma once

// Random instances and scheme sweeps reproducing the simulation study:
// exponential channel powers (Rayleigh fading) with mean 1e-3 and requests
// uniform over the full view grid.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vsmc/dc_solver.hpp"
#include "vsmc/model.hpp"
#include "vsmc/solution.hpp"

namespace vsmc {

struct GeneratorParams {
  int users = 10;
  int views = 5;
  int subdivision = 10;
  double delta = 1.0;
  double rate_bps = 1e7;
  double frame_s = 0.1;
  double bandwidth_hz = 1e7;
  std::optional<double> noise_w;  // thermal_noise(B) when empty
  double server_synthesis_j = 5e-7;
  double user_synthesis_j = 5e-7;
  double beta = 3.0;
  double channel_mean = 1e-3;

  void validate() const;  // ConfigError
};

// Channels and requests are drawn from std::mt19937_64 seeded with `seed`:
// first K channel powers h = -mean * ln(1 - u), then K grid slots
// floor(u * |grid|), with u = (next() >> 11) * 2^-53 in both cases.
Scenario generate_scenario(std::uint64_t seed, const GeneratorParams& params);

// Random selection passing check_selection: each user is served directly or,
// with probability 1/2 when both reference windows are non-empty, by a
// uniformly drawn left/right pair.
Selection random_feasible_selection(const Scenario& scenario, std::uint64_t seed);

// Four users requesting views 1..4 on V = 4, Q = 2, delta = 1 with equal
// channels 1e-3 and free synthesis, so that fewer transmissions always pay.
Scenario four_user_example();
// Its three-transmission selection: x on {1, 2.5, 4}; user 1 and 4 served
// directly, user 2 synthesizes from (1, 2.5), user 3 from (2.5, 4).
Selection four_user_example_selection(const Scenario& scenario);

enum class Scheme { kExact, kBrute, kRelax, kDc, kBaseline1, kBaseline2 };

std::string to_string(Scheme scheme);
Scheme parse_scheme(const std::string& name);  // ConfigError on unknown names

// Runs one scheme. Solver exceptions propagate.
Solution run_scheme(const Scenario& scenario, Scheme scheme, const DcOptions& dc = {});

enum class SweepParameter { kUsers, kBandwidth, kFrame };

std::string to_string(SweepParameter parameter);
SweepParameter parse_sweep_parameter(const std::string& name);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::kBandwidth;
  std::vector<double> values;
  int trials = 100;
  std::vector<Scheme> schemes;
  std::uint64_t base_seed = 1;
  GeneratorParams base;
  DcOptions dc;
  int threads = 0;  // 0: default_thread_count()
};

struct TrialRecord {
  std::uint64_t seed = 0;
  int users = 0;
  double bandwidth_hz = 0.0;
  double frame_s = 0.0;
  std::string scheme;
  EnergyBreakdown energy;
  int views_transmitted = 0;
  double solve_ms = 0.0;
  std::vector<std::string> flags;  // "failed" marks a solver failure
  bool failed() const;
};

// One record per (value, trial, scheme), ordered by value, then seed, then
// scheme as listed. Trials run in parallel; seeds are base_seed + trial.
std::vector<TrialRecord> run_sweep(const SweepSpec& spec);

// Serial reference of run_sweep.
std::vector<TrialRecord> run_sweep_serial(const SweepSpec& spec);

struct SummaryRow {
  std::string scheme;
  int users = 0;
  double bandwidth_hz = 0.0;
  double frame_s = 0.0;
  std::optional<double> mean_j;     // empty when every trial failed
  std::optional<double> stderr_j;
  double mean_solve_ms = 0.0;
  int count = 0;
  int excluded = 0;
};

// Aggregates per (scheme, K, B, T) in order of first appearance. Throws
// PreconditionError on empty input.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);

inline constexpr const char* kCsvHeader =
    "seed,K,B_hz,T_s,scheme,E_total_J,E_tx_J,E_synth_server_J,E_synth_users_J,n_views_tx,solve_ms,flags";

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace vsmc
