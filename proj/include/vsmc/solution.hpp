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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vsmc/model.hpp"

namespace vsmc {

struct Diagnostics {
  std::string solver;
  std::uint64_t candidates = 0;   // selections evaluated (enumeration solvers)
  int iterations = 0;             // outer iterations (DC) or Newton steps (relaxation)
  double wall_ms = 0.0;
  std::optional<double> lower_bound_j;  // relaxation objective when available
  std::vector<std::string> flags;
};

struct Solution {
  Selection selection;
  Allocation allocation;
  EnergyBreakdown energy;
  Diagnostics diagnostics;
};

}  // namespace vsmc
