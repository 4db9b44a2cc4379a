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

// Optimal transmission time and power for a fixed view selection. For every
// transmitted view the optimal time follows from the stationarity condition
// of the convex time-only problem and is a Lambert-W expression of the
// multiplier lambda of the frame constraint; lambda is found by bisection so
// that the frame is fully used.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vsmc/model.hpp"
#include "vsmc/solution.hpp"

namespace vsmc {

// Worst channel among users utilizing the view in `slot`; empty when nobody
// uses it.
std::optional<double> h_min(const Scenario& scenario, const Selection& selection, int slot);
std::optional<double> h_min(std::span<const double> channels, std::span<const std::uint8_t> users_of_view);

// Optimal time of a view with worst channel h at multiplier lambda > 0.
double view_time_at_lambda(const Scenario& scenario, double h, double lambda);

// Sum of view_time_at_lambda over the given worst channels.
double total_time_at_lambda(const Scenario& scenario, std::span<const double> h_mins, double lambda);

// Multiplier at which a view with worst channel h takes time t; this is the
// negated derivative of t*(n0/h)*(2^(RT/(Bt)) - 1) with respect to t.
double marginal_energy(const Scenario& scenario, double h, double t);

// Minimum-energy split of the frame among views with the given worst channels.
struct FrameShare {
  std::vector<double> time_s;   // same order as the input
  std::vector<double> power_w;
  double lambda = 0.0;
  double energy_j = 0.0;
};
FrameShare share_frame(const Scenario& scenario, std::span<const double> h_mins);

struct DualState {
  double lambda_star = 0.0;
  std::vector<std::optional<double>> h_min;  // per grid slot
};

struct AllocationResult {
  Allocation allocation;
  double transmission_energy_j = 0.0;
  DualState dual;
};

// Requires a feasible selection in which every transmitted view has at least
// one utilizing user (PreconditionError otherwise).
AllocationResult optimal_allocation(const Scenario& scenario, const Selection& selection);

// Allocates a selection optimally and packages it with its energy breakdown.
Solution complete_solution(const Scenario& scenario, Selection selection, std::string solver);

}  // namespace vsmc
