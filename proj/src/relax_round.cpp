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

#include "vsmc/relax_round.hpp"

#include <chrono>
#include <cstdlib>

#include "vsmc/allocator.hpp"
#include "vsmc/errors.hpp"

namespace vsmc {

namespace {

View window_argmax(const ViewGrid& grid, const std::vector<View>& window, View request,
                   std::span<const double> row) {
  View best = window.front();
  for (View v : window) {
    const double a = row[grid.slot(v)];
    const double b = row[grid.slot(best)];
    if (a > b) {
      best = v;
    } else if (a == b) {
      const int da = std::abs(v.g - request.g);
      const int db = std::abs(best.g - request.g);
      if (da < db || (da == db && v.g < best.g)) best = v;
    }
  }
  return best;
}

}  // namespace

Selection round_y(const Scenario& scenario, const UserViewMatrix<double>& y) {
  const ViewGrid& grid = scenario.grid;
  Selection out = Selection::empty(scenario);
  for (int k = 0; k < scenario.users(); ++k) {
    const View r = scenario.requests[k];
    const int rs = grid.slot(r);
    const auto row = y.row(k);
    bool direct = true;
    for (int s = 0; s < grid.size(); ++s) {
      if (s != rs && !(row[rs] > row[s])) {
        direct = false;
        break;
      }
    }
    if (direct) {
      out.y(k, rs) = 1;
      continue;
    }
    const ViewWindows w = reference_windows(grid, r);
    if (w.left.empty() || w.right.empty()) {
      throw PreconditionError("rounding reached the synthesis branch for a user with an empty window");
    }
    out.y(k, grid.slot(window_argmax(grid, w.left, r, row))) = 1;
    out.y(k, grid.slot(window_argmax(grid, w.right, r, row))) = 1;
  }
  derive_transmissions(out);
  return out;
}

Solution solve_relax_round(const Scenario& scenario, const ConvexOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const ConvexViewProgram program = build_program(scenario);
  const ConvexSolution relaxed = solve_program(program, options);
  Solution out = complete_solution(scenario, round_y(scenario, relaxed.y), "relax");
  out.diagnostics.iterations = relaxed.newton_steps;
  out.diagnostics.lower_bound_j = relaxed.objective_j;
  out.diagnostics.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace vsmc
