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

#include "vsmc/baselines.hpp"

#include <chrono>

#include "vsmc/allocator.hpp"

namespace vsmc {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

Solution baseline1(const Scenario& scenario) {
  const auto start = std::chrono::steady_clock::now();
  Selection selection = Selection::empty(scenario);
  for (int k = 0; k < scenario.users(); ++k) {
    selection.y(k, scenario.grid.slot(scenario.requests[k])) = 1;
  }
  derive_transmissions(selection);
  Solution out = complete_solution(scenario, std::move(selection), "baseline1");
  out.diagnostics.wall_ms = elapsed_ms(start);
  return out;
}

Solution baseline2(const Scenario& scenario) {
  const auto start = std::chrono::steady_clock::now();
  const ViewGrid& grid = scenario.grid;
  const int q = grid.subdivision();
  Selection selection = Selection::empty(scenario);
  for (int k = 0; k < scenario.users(); ++k) {
    const View r = scenario.requests[k];
    if (grid.is_original(r)) {
      selection.y(k, grid.slot(r)) = 1;
      continue;
    }
    const View floor{r.g / q * q};
    const View ceil{floor.g + q};
    selection.y(k, grid.slot(floor)) = 1;
    selection.y(k, grid.slot(ceil)) = 1;
  }
  derive_transmissions(selection);
  Solution out = complete_solution(scenario, std::move(selection), "baseline2");
  out.diagnostics.wall_ms = elapsed_ms(start);
  return out;
}

}  // namespace vsmc
