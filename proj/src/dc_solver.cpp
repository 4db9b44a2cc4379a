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

#include "vsmc/dc_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "vsmc/allocator.hpp"
#include "vsmc/errors.hpp"
#include "vsmc/relax_round.hpp"

namespace vsmc {

namespace {

Selection all_direct(const Scenario& scenario) {
  Selection sel = Selection::empty(scenario);
  for (int k = 0; k < scenario.users(); ++k) sel.y(k, scenario.grid.slot(scenario.requests[k])) = 1;
  derive_transmissions(sel);
  return sel;
}

double max_fractionality(const UserViewMatrix<double>& y) {
  double worst = 0.0;
  for (double v : y.data()) worst = std::max(worst, std::min(v, 1.0 - v));
  return worst;
}

}  // namespace

double penalty(const UserViewMatrix<double>& y) {
  double p = 0.0;
  for (double v : y.data()) p += v * (1.0 - v);
  return p;
}

LinearizedPenalty linearized_penalty(const UserViewMatrix<double>& y,
                                     const UserViewMatrix<double>& y_prev) {
  LinearizedPenalty out;
  out.coefficients = UserViewMatrix<double>(y_prev.users(), y_prev.views(), 0.0);
  const auto& prev = y_prev.data();
  const auto& cur = y.data();
  auto& coef = out.coefficients.data();
  for (std::size_t i = 0; i < prev.size(); ++i) {
    coef[i] = 1.0 - 2.0 * prev[i];
    out.constant += prev[i] * prev[i];
    out.value += coef[i] * cur[i];
  }
  out.value += out.constant;
  return out;
}

double default_penalty_weight(const Scenario& scenario) {
  const double eu = *std::max_element(scenario.user_synthesis_j.begin(), scenario.user_synthesis_j.end());
  const Selection direct = all_direct(scenario);
  const AllocationResult alloc = optimal_allocation(scenario, direct);
  const double e_direct = energy(scenario, direct, alloc.allocation).total_j;
  return 10.0 * (scenario.server_synthesis_j + scenario.beta * eu + e_direct);
}

DcResult run_dc(const Scenario& scenario, const DcOptions& options,
                const UserViewMatrix<double>* initial_y) {
  const auto start = std::chrono::steady_clock::now();
  DcResult out;
  double rho = options.rho.value_or(default_penalty_weight(scenario));
  if (!(rho > 0.0)) throw PreconditionError("penalty weight must be positive");

  // Initial point.
  const ConvexViewProgram relaxation = build_program(scenario);
  const double scale = relaxation.energy_scale();
  UserViewMatrix<double> y;
  std::vector<double> t;
  std::vector<std::string> flags;
  if (initial_y) {
    y = *initial_y;
  } else {
    try {
      const ConvexSolution relaxed = solve_program(relaxation, options.convex);
      y = relaxed.y;
      t = relaxed.time_s;
    } catch (const ConvergenceError&) {
      flags.push_back("dc_direct_start");
    }
  }
  if (y.users() == 0 || t.empty()) {
    Selection direct = initial_y ? round_y(scenario, y) : all_direct(scenario);
    const AllocationResult alloc = optimal_allocation(scenario, direct);
    if (!initial_y) {
      y = UserViewMatrix<double>(scenario.users(), scenario.grid.size(), 0.0);
      for (std::size_t i = 0; i < y.data().size(); ++i) y.data()[i] = direct.y.data()[i];
    }
    t = alloc.allocation.time_s;
  }

  const auto penalized = [&](const std::vector<double>& tt, const UserViewMatrix<double>& yy) {
    return perspective_objective(scenario, tt, yy) + rho * penalty(yy);
  };

  // Best rounded point seen along the path, starting with the initial one.
  std::optional<Solution> incumbent;
  const auto offer = [&](const UserViewMatrix<double>& yy) {
    if (!options.keep_incumbent) return;
    Solution candidate = complete_solution(scenario, round_y(scenario, yy), "dc");
    if (!incumbent || candidate.energy.total_j < incumbent->energy.total_j) {
      incumbent = std::move(candidate);
    }
  };
  offer(y);

  double previous = penalized(t, y);
  out.history_j.push_back(previous);
  for (int round = 0; round <= options.max_rho_doublings; ++round) {
    for (int i = 0; i < options.max_iterations; ++i) {
      const LinearizedPenalty lin = linearized_penalty(y, y);
      UserViewMatrix<double> coef = lin.coefficients;
      double constant = 0.0;
      for (const auto& [k, s] : relaxation.free_y()) constant += y(k, s) * y(k, s);
      for (double& c : coef.data()) c *= rho;
      const ConvexViewProgram program = build_program(scenario, &coef, rho * constant);
      ConvexSolution sol;
      try {
        sol = solve_program(program, options.convex);
      } catch (const ConvergenceError& e) {
        throw ConvergenceError(fmt::format("DC iteration {}: {}", out.iterations + 1, e.what()), e.first,
                               e.second);
      }
      ++out.iterations;
      y = std::move(sol.y);
      t = std::move(sol.time_s);
      offer(y);
      const double current = penalized(t, y);
      out.history_j.push_back(current);
      const bool converged =
          std::abs(previous - current) / scale < options.tolerance * (1.0 + std::abs(current) / scale);
      previous = current;
      if (converged) break;
    }
    if (max_fractionality(y) <= options.binary_tolerance || round == options.max_rho_doublings) break;
    rho *= 2.0;
    previous = penalized(t, y);
  }
  out.rho_j = rho;
  out.final_y = y;
  out.final_t = t;

  // Snap to a binary selection.
  Selection selection = Selection::empty(scenario);
  bool near_binary = true;
  for (int k = 0; k < scenario.users(); ++k) {
    for (int s = 0; s < scenario.grid.size(); ++s) {
      const double v = y(k, s);
      if (v <= options.binary_tolerance) {
        selection.y(k, s) = 0;
      } else if (v >= 1.0 - options.binary_tolerance) {
        selection.y(k, s) = 1;
      } else {
        near_binary = false;
      }
    }
  }
  derive_transmissions(selection);
  if (!near_binary || !check_selection(scenario, selection).ok()) {
    out.binary_converged = false;
    flags.push_back("dc_nonbinary");
    selection = round_y(scenario, y);
  }
  out.solution = complete_solution(scenario, std::move(selection), "dc");
  if (incumbent && incumbent->energy.total_j < out.solution.energy.total_j) {
    out.solution = std::move(*incumbent);
    flags.push_back("dc_incumbent");
  }
  out.solution.diagnostics.iterations = out.iterations;
  out.solution.diagnostics.flags = std::move(flags);
  out.solution.diagnostics.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

Solution solve_dc(const Scenario& scenario, const DcOptions& options) {
  return run_dc(scenario, options).solution;
}

}  // namespace vsmc
