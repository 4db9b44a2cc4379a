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

#include "vsmc/validation.hpp"

#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "vsmc/allocator.hpp"
#include "vsmc/baselines.hpp"
#include "vsmc/convex_core.hpp"
#include "vsmc/errors.hpp"
#include "vsmc/exact_solver.hpp"
#include "vsmc/experiments.hpp"
#include "vsmc/numerics.hpp"
#include "vsmc/relax_round.hpp"

namespace vsmc {

namespace {

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Returns an empty string on success, otherwise the first failure.
using Check = std::function<std::string(std::uint64_t)>;

std::string lambert_round_trip(std::uint64_t) {
  for (int i = 0; i <= 1000; ++i) {
    const double x = -1.0 + 11.0 * i / 1000.0;
    const double w = lambert_w0(x * std::exp(x));
    if (std::abs(w - x) > 1e-10) return fmt::format("W(x e^x) = {} for x = {}", w, x);
  }
  return {};
}

std::string allocator_kkt(std::uint64_t seed) {
  GeneratorParams p;
  p.users = 6;
  for (int trial = 0; trial < 20; ++trial) {
    const Scenario s = generate_scenario(seed + trial, p);
    const Selection sel = random_feasible_selection(s, seed + 1000 + trial);
    const AllocationResult a = optimal_allocation(s, sel);
    double total = 0.0;
    for (double t : a.allocation.time_s) total += t;
    if (std::abs(total - s.frame_s) > 1e-9 * s.frame_s) {
      return fmt::format("trial {}: sum t = {} for T = {}", trial, total, s.frame_s);
    }
    const double bits = s.rate_bps * s.frame_s / s.bandwidth_hz * std::log(2.0);
    for (int slot = 0; slot < s.grid.size(); ++slot) {
      if (!sel.x[slot]) continue;
      const double h = *a.dual.h_min[slot];
      const auto f = [&](double t) { return t * s.noise_w / h * std::expm1(bits / t); };
      const double t = a.allocation.time_s[slot];
      const double step = 1e-6 * t;
      const double derivative = (f(t + step) - f(t - step)) / (2.0 * step);
      if (relative(-derivative, a.dual.lambda_star) > 1e-6) {
        return fmt::format("trial {}: dE/dt = {} vs -lambda = {}", trial, derivative, -a.dual.lambda_star);
      }
    }
  }
  return {};
}

std::string pruning_sound(std::uint64_t seed) {
  GeneratorParams p;
  p.views = 3;
  p.subdivision = 2;
  for (int trial = 0; trial < 30; ++trial) {
    p.users = 1 + trial % 3;
    const Scenario s = generate_scenario(seed + trial, p);
    const double exact = solve_exact(s).energy.total_j;
    const double brute = solve_brute(s).energy.total_j;
    if (relative(exact, brute) > 1e-9) return fmt::format("trial {}: exact {} vs brute {}", trial, exact, brute);
  }
  return {};
}

std::string schemes_feasible_and_dominated(std::uint64_t seed) {
  GeneratorParams p;
  for (int trial = 0; trial < 10; ++trial) {
    p.users = 2 + trial % 2;
    const Scenario s = generate_scenario(seed + trial, p);
    const Solution exact = solve_exact(s);
    for (Scheme scheme : {Scheme::kRelax, Scheme::kDc, Scheme::kBaseline1, Scheme::kBaseline2}) {
      const Solution sol = run_scheme(s, scheme);
      const FeasibilityReport sel = check_selection(s, sol.selection);
      const FeasibilityReport alloc = check_allocation(s, sol.selection, sol.allocation);
      if (!sel.ok() || !alloc.ok()) {
        return fmt::format("trial {} {}: {}{}", trial, to_string(scheme), sel.describe(), alloc.describe());
      }
      if (sol.energy.total_j < exact.energy.total_j * (1.0 - 1e-9)) {
        return fmt::format("trial {} {}: {} below exact {}", trial, to_string(scheme), sol.energy.total_j,
                           exact.energy.total_j);
      }
    }
  }
  return {};
}

std::string binary_objective_matches(std::uint64_t seed) {
  GeneratorParams p;
  for (int trial = 0; trial < 10; ++trial) {
    p.users = 2 + trial % 3;
    const Scenario s = generate_scenario(seed + trial, p);
    const Solution sol = solve_exact(s);
    UserViewMatrix<double> y(s.users(), s.grid.size(), 0.0);
    for (std::size_t i = 0; i < y.data().size(); ++i) y.data()[i] = sol.selection.y.data()[i];
    const double value = perspective_objective(s, sol.allocation.time_s, y);
    if (relative(value, sol.energy.total_j) > 1e-8) {
      return fmt::format("trial {}: objective {} vs energy {}", trial, value, sol.energy.total_j);
    }
  }
  return {};
}

std::string four_user_example_holds(std::uint64_t) {
  const Scenario s = four_user_example();
  const FeasibilityReport r = check_selection(s, four_user_example_selection(s));
  if (!r.ok()) return r.describe();
  const Solution sol = solve_exact(s);
  if (sol.selection.transmitted_count() > 3) {
    return fmt::format("exact transmits {} views", sol.selection.transmitted_count());
  }
  return {};
}

}  // namespace

std::vector<CheckResult> run_validation_suite(std::uint64_t seed) {
  const std::vector<std::pair<std::string, Check>> checks{
      {"lambert_w0 round trip on [-1, 10]", lambert_round_trip},
      {"allocator fills the frame and meets stationarity", allocator_kkt},
      {"pruned exact search equals brute force", pruning_sound},
      {"every scheme is feasible and no better than exact", schemes_feasible_and_dominated},
      {"binary objective equals the allocated energy", binary_objective_matches},
      {"four-user example selection is feasible and exact uses <= 3 views", four_user_example_holds},
  };
  std::vector<CheckResult> out;
  for (const auto& [name, check] : checks) {
    CheckResult r{name, false, {}};
    try {
      r.detail = check(seed);
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = fmt::format("threw: {}", e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

bool print_report(std::ostream& out, const std::vector<CheckResult>& results) {
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    out << (r.passed ? "PASS  " : "FAIL  ") << r.name;
    if (!r.passed) out << ": " << r.detail;
    out << '\n';
  }
  return all;
}

}  // namespace vsmc
