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

// Human-readable summaries printed by the command-line tool.

#include <string>

#include "vsmc/model.hpp"
#include "vsmc/solution.hpp"

namespace vsmc {

std::string solution_report(const Scenario& scenario, const Solution& solution);

// Per-user reduced candidate sets U_k and the choice lists derived from them.
std::string candidates_report(const Scenario& scenario);

}  // namespace vsmc
