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

#include "vsmc/report.hpp"

#include <fmt/format.h>

#include "vsmc/candidate_sets.hpp"

namespace vsmc {

namespace {

std::string view_list(const ViewGrid& grid, const std::vector<View>& views) {
  std::string out = "{";
  for (std::size_t i = 0; i < views.size(); ++i) {
    if (i) out += ", ";
    out += fmt::format("{:g}", grid.value(views[i]));
  }
  return out + "}";
}

}  // namespace

std::string solution_report(const Scenario& s, const Solution& sol) {
  const ViewGrid& grid = s.grid;
  std::string out = fmt::format("solver: {}   users: {}   views transmitted: {}\n", sol.diagnostics.solver,
                                s.users(), sol.selection.transmitted_count());
  out += fmt::format("{:>6}  {:>9}  {:>12}  {:>12}  {}\n", "view", "synth", "time_s", "power_W", "users");
  for (int slot = 0; slot < grid.size(); ++slot) {
    if (!sol.selection.x[slot]) continue;
    std::string users;
    for (int k = 0; k < s.users(); ++k) {
      if (sol.selection.y(k, slot)) users += fmt::format("{}{}", users.empty() ? "" : ",", k);
    }
    out += fmt::format("{:>6g}  {:>9}  {:>12.6g}  {:>12.6g}  {}\n", grid.value(grid.at(slot)),
                       grid.is_original(grid.at(slot)) ? "no" : "server", sol.allocation.time_s[slot],
                       sol.allocation.power_w[slot], users);
  }
  const EnergyBreakdown& e = sol.energy;
  out += fmt::format("transmission     {:.9g} J\n", e.transmission_j);
  out += fmt::format("server synthesis {:.9g} J\n", e.server_synthesis_j);
  out += fmt::format("user synthesis   {:.9g} J (weighted by beta = {:g})\n", e.user_synthesis_j, s.beta);
  out += fmt::format("total            {:.9g} J\n", e.total_j);
  if (sol.diagnostics.lower_bound_j) {
    out += fmt::format("relaxation bound {:.9g} J\n", *sol.diagnostics.lower_bound_j);
  }
  if (sol.diagnostics.candidates) out += fmt::format("candidates       {}\n", sol.diagnostics.candidates);
  if (sol.diagnostics.iterations) out += fmt::format("iterations       {}\n", sol.diagnostics.iterations);
  out += fmt::format("wall time        {:.3f} ms\n", sol.diagnostics.wall_ms);
  if (!sol.diagnostics.flags.empty()) {
    out += "flags           ";
    for (const auto& f : sol.diagnostics.flags) out += " " + f;
    out += "\n";
  }
  return out;
}

std::string candidates_report(const Scenario& s) {
  const ViewGrid& grid = s.grid;
  std::string out = fmt::format("pruning hypothesis (beta*E_u >= E_b for all users): {}\n",
                                pruning_hypothesis_holds(s) ? "holds" : "fails");
  for (int k = 0; k < s.users(); ++k) {
    out += fmt::format("user {} request {:g}\n", k, grid.value(s.requests[k]));
    out += fmt::format("  U_k = {}\n", view_list(grid, user_candidates(s, k)));
    const UserChoices choices = enumerate_user_choices(s, k);
    out += fmt::format("  choices ({}{}):", choices.choices.size(), choices.pruned ? "" : ", unpruned");
    for (const auto& c : choices.choices) {
      if (c.is_direct()) {
        out += " direct";
      } else {
        out += fmt::format(" ({:g},{:g})", grid.value(c.left), grid.value(c.right));
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace vsmc
