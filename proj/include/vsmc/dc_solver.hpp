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

// Penalty / convex-concave procedure for the binary utilization problem. The
// binarity constraint y(1-y) <= 0 is moved into the objective as
// rho * sum y(1-y); each iteration replaces that concave penalty by its
// tangent at the previous iterate and solves the resulting convex program.

#include <optional>
#include <vector>

#include "vsmc/convex_core.hpp"
#include "vsmc/model.hpp"
#include "vsmc/solution.hpp"

namespace vsmc {

// sum_{k,v} y_kv (1 - y_kv).
double penalty(const UserViewMatrix<double>& y);

struct LinearizedPenalty {
  double value = 0.0;                  // P(y_prev) + grad P(y_prev) . (y - y_prev)
  UserViewMatrix<double> coefficients; // 1 - 2 y_prev
  double constant = 0.0;               // sum y_prev^2
};

// Tangent of the penalty at y_prev, evaluated at y. Majorizes penalty(y).
LinearizedPenalty linearized_penalty(const UserViewMatrix<double>& y,
                                     const UserViewMatrix<double>& y_prev);

struct DcOptions {
  std::optional<double> rho;     // J; default_penalty_weight() when empty
  int max_iterations = 50;
  double tolerance = 1e-6;       // relative decrease, in units of the direct-service energy
  double binary_tolerance = 1e-3;
  int max_rho_doublings = 3;
  // Also round every iterate (initial point included) and return the best
  // rounded selection when it beats the snapped final iterate.
  bool keep_incumbent = true;
  ConvexOptions convex;
};

// 10 * (E_b + beta * max_k E_u,k + energy of serving every user directly).
double default_penalty_weight(const Scenario& scenario);

struct DcResult {
  Solution solution;
  std::vector<double> history_j;  // penalized objective, initial point first
  double rho_j = 0.0;             // final penalty weight
  int iterations = 0;
  bool binary_converged = true;
  UserViewMatrix<double> final_y; // last fractional iterate
  std::vector<double> final_t;
};

// Starts from the continuous relaxation (or the all-direct point when that
// fails) unless an initial utilization is supplied.
DcResult run_dc(const Scenario& scenario, const DcOptions& options = {},
                const UserViewMatrix<double>* initial_y = nullptr);

Solution solve_dc(const Scenario& scenario, const DcOptions& options = {});

}  // namespace vsmc
