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

// JSON run configuration. Flat scenario keys with optional "sweep" and "dc"
// sections; see README.md for the schema. Omitted keys take the defaults of
// the simulation study (K = 10, V = 5, Q = 10, R = 10 Mbit/s, ...).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vsmc/dc_solver.hpp"
#include "vsmc/experiments.hpp"
#include "vsmc/model.hpp"
#include "vsmc/solution.hpp"

namespace vsmc {

struct RunConfig {
  GeneratorParams params;
  std::uint64_t seed = 1;
  // Explicit instance; both present or both absent.
  std::optional<std::vector<double>> requests;
  std::optional<std::vector<double>> channels;
  // Per-user E_u when given as a list.
  std::optional<std::vector<double>> user_synthesis_j;
  std::optional<SweepSpec> sweep;
  DcOptions dc;

  // The explicit instance, or one drawn from `seed` with `params`.
  Scenario scenario() const;
};

// Throws ConfigError naming the field and the violated constraint, and
// InvalidViewError for requests that are not grid points.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);

// Explicit-instance config that parse_config maps back to `scenario`.
std::string scenario_to_json(const Scenario& scenario);

// Solution report: selection, allocation, energy breakdown and diagnostics.
std::string solution_to_json(const Scenario& scenario, const Solution& solution);

}  // namespace vsmc
