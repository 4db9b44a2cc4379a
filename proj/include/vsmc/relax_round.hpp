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

#include "vsmc/convex_core.hpp"
#include "vsmc/model.hpp"
#include "vsmc/solution.hpp"

namespace vsmc {

// Rounds a fractional utilization to a feasible binary selection. A user is
// served directly when y_{k,r_k} strictly exceeds every other entry of its
// row; otherwise it uses the largest entry of each reference window. Window
// ties go to the view nearest r_k, then to the smaller index. x is derived
// from the rounded y.
Selection round_y(const Scenario& scenario, const UserViewMatrix<double>& y);

// Continuous relaxation, rounding, then optimal time/power for the rounded
// selection. The relaxation value is reported as the solution's lower bound.
Solution solve_relax_round(const Scenario& scenario, const ConvexOptions& options = {});

}  // namespace vsmc
